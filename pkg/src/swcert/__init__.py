"""Numerical certification toolkit for special Weingarten surfaces with convex planar boundary."""
from .catenoid import CatenoidProfile, height_profile, hstar, radius_at_height, total_height
from .certify import (
    CertificationReport,
    c_constant,
    general_conditions_check,
    j_value,
    r_d_value,
    s0_solve,
    theorem1_threshold,
    theorem2_check,
)
from .curve import ConvexCurve, enclosing_radius, make_ellipse, make_sampled
from .limacon import Limacon, LoopType, classify, graph_lemma_radius, inner_loop_disk
from .weingarten import WeingartenClass, WeingartenType, build, homothety

__version__ = "0.1.0"

"""
Limacon of Pascal with base point at the origin and circle center ``(a, 0)``.

The curve is the locus of reflections of the base point through the
tangent lines of a circle of radius ``c``; in polar form
``rho(theta) = 2 a cos(theta) + 2 c``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import InvalidInputError, NoInnerLoopError

__all__ = [
    "LoopType",
    "Limacon",
    "InnerLoopDisk",
    "GraphRadius",
    "classify",
    "radial",
    "phi",
    "inner_loop_disk",
    "graph_lemma_radius",
    "near_cusp",
    "limacon_svg",
]

CUSP_RTOL = 1e-12


class LoopType(str, enum.Enum):
    EMBEDDED = "Embedded"
    CUSP = "Cusp"
    TWO_LOOPS = "TwoLoops"


def _check(a, c):
    if not (a > 0 and c > 0):
        raise InvalidInputError(f"limacon parameters must be positive, got a={a!r}, c={c!r}")


@dataclass(frozen=True)
class Limacon:
    a: float
    c: float

    def __post_init__(self):
        _check(self.a, self.c)

    @property
    def loop_type(self) -> LoopType:
        return classify(self.a, self.c)

    def radial(self, theta):
        return radial(self, theta)

    def phi(self, theta):
        return phi(self, theta)

    def points(self, n: int = 2048) -> np.ndarray:
        theta = np.linspace(0.0, 2.0 * np.pi, n + 1)
        rho = radial(self, theta)
        return np.column_stack([rho * np.cos(theta), rho * np.sin(theta)])


class InnerLoopDisk(NamedTuple):
    center: tuple
    r_in: float
    r_out: float


class GraphRadius(NamedTuple):
    r_lower: float
    r_upper: float


def classify(a: float, c: float) -> LoopType:
    """Embedded if ``a < c``, cusp at the base point if ``a == c``, else two loops.

    Equality is exact; use :func:`near_cusp` to detect nearly degenerate input.
    """
    _check(a, c)
    if a < c:
        return LoopType.EMBEDDED
    if a == c:
        return LoopType.CUSP
    return LoopType.TWO_LOOPS


def near_cusp(a: float, c: float, rtol: float = CUSP_RTOL) -> bool:
    return a != c and abs(a - c) <= rtol * max(a, c)


def radial(L: Limacon, theta):
    return 2.0 * L.a * np.cos(theta) + 2.0 * L.c


def phi(L: Limacon, theta):
    """Squared distance from ``B = (a - c, 0)`` to the point at angle ``theta``."""
    a, c = L.a, L.c
    ct = np.cos(theta)
    return 4.0 * c * (a * ct + c) * (1.0 + ct) + (a - c) ** 2


def inner_loop_disk(a: float, c: float) -> InnerLoopDisk:
    """Disks centered at ``B = (a - c, 0)`` bounding the smaller loop.

    The disk of radius ``r_in = sqrt((a-c)^3 / a)`` is enclosed by the smaller
    loop; the disk of radius ``r_out = a - c`` contains it.
    """
    _check(a, c)
    if a <= c:
        raise NoInnerLoopError(f"limacon with a={a!r} <= c={c!r} has no inner loop")
    gap = a - c
    return InnerLoopDisk(center=(gap, 0.0), r_in=math.sqrt(gap**3 / a), r_out=gap)


def graph_lemma_radius(Lambda: float, lam: float) -> GraphRadius:
    """Bounds ``sqrt(lam / Lambda^3) <= r <= 1 / Lambda`` on the graphical disk radius.

    The lower bound is the inner-loop radius of the limacon with
    ``a = 1/lam`` and ``c = 1/lam - 1/Lambda``. Callers use ``r_lower`` as
    the radius.
    """
    if not (lam > 0 and Lambda > 0):
        raise InvalidInputError(f"curvatures must be positive, got Lambda={Lambda!r}, lambda={lam!r}")
    if Lambda < lam:
        raise InvalidInputError(f"need Lambda >= lambda, got Lambda={Lambda!r} < lambda={lam!r}")
    if Lambda == lam:
        return GraphRadius(1.0 / Lambda, 1.0 / Lambda)
    r_lower = inner_loop_disk(1.0 / lam, 1.0 / lam - 1.0 / Lambda).r_in
    return GraphRadius(r_lower, 1.0 / Lambda)


def _svg_circle(cx, cy, r, stroke, dash=False):
    extra = ' stroke-dasharray="4 3"' if dash else ""
    return (
        f'<circle cx="{cx:.6f}" cy="{-cy:.6f}" r="{r:.6f}" fill="none" '
        f'stroke="{stroke}" vector-effect="non-scaling-stroke"{extra}/>'
    )


def limacon_svg(L: Limacon, n: int = 2048, size: int = 480) -> str:
    """SVG drawing of the limacon with its inner-loop disks when they exist."""
    pts = L.points(n)
    xmin, ymin = pts.min(axis=0)
    xmax, ymax = pts.max(axis=0)
    pad = 0.05 * max(xmax - xmin, ymax - ymin)
    # y axis is flipped in SVG
    vb = (xmin - pad, -ymax - pad, xmax - xmin + 2 * pad, ymax - ymin + 2 * pad)
    poly = " ".join(f"{x:.6f},{-y:.6f}" for x, y in pts)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="{vb[0]:.6f} {vb[1]:.6f} {vb[2]:.6f} {vb[3]:.6f}">',
        f"<title>limacon a={L.a:g} c={L.c:g} ({L.loop_type.value})</title>",
        f'<polyline points="{poly}" fill="none" stroke="black" vector-effect="non-scaling-stroke"/>',
        _svg_circle(L.a, 0.0, L.c, "gray", dash=True),
    ]
    if L.loop_type is LoopType.TWO_LOOPS:
        disk = inner_loop_disk(L.a, L.c)
        parts.append(_svg_circle(*disk.center, disk.r_in, "blue"))
        parts.append(_svg_circle(*disk.center, disk.r_out, "red"))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"

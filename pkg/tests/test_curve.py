import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from swcert import curve
from swcert.errors import InvalidCurveError, InvalidInputError, NotStrictlyConvexError

from test_acceptance import _exhaustive_circle


def _circle(n, r=1.0):
    t = 2 * np.pi * np.arange(n) / n
    return np.column_stack([r * np.cos(t), r * np.sin(t)])


def _ellipse_pts(A, B, n):
    t = 2 * np.pi * np.arange(n) / n
    return np.column_stack([A * np.cos(t), B * np.sin(t)])


def test_unit_circle_ellipse():
    C = curve.make_ellipse(1, 1, 256)
    assert C.Lambda == pytest.approx(1, abs=1e-12)
    assert C.lam == pytest.approx(1, abs=1e-12)
    assert C.omega == pytest.approx(1, abs=1e-12)
    assert C.is_circle


def test_ellipse_1_2():
    C = curve.make_ellipse(1, 2, 1024)
    # kappa(t) = AB / (A^2 sin^2 t + B^2 cos^2 t)^(3/2): B/A^2 at t = pi/2, A/B^2 at t = 0
    assert C.Lambda == pytest.approx(2.0, rel=1e-12)
    assert C.lam == pytest.approx(0.25, rel=1e-12)
    assert C.omega == pytest.approx(2.0, rel=1e-12)
    assert not C.is_circle


@pytest.mark.parametrize("A, B, n", [(0, 1, 128), (1, -2, 128), (1, 1, 63)])
def test_ellipse_bad_input(A, B, n):
    with pytest.raises(InvalidInputError):
        curve.make_ellipse(A, B, n)


def test_sampled_circle():
    C = curve.make_sampled(_circle(256))
    assert C.Lambda == pytest.approx(1, abs=1e-6)
    assert C.lam == pytest.approx(1, abs=1e-6)
    assert C.omega == pytest.approx(1, abs=1e-9)


def test_sampled_ellipse_matches_analytic():
    C = curve.make_sampled(_ellipse_pts(1, 2, 512))
    E = curve.make_ellipse(1, 2, 1024)
    assert C.Lambda == pytest.approx(E.Lambda, abs=1e-3)
    assert C.lam == pytest.approx(E.lam, abs=1e-3)


def test_sampled_clockwise_is_accepted():
    C = curve.make_sampled(_ellipse_pts(1, 2, 512)[::-1])
    assert C.Lambda == pytest.approx(2, abs=1e-3)


def test_square_corners_rejected():
    with pytest.raises(NotStrictlyConvexError):
        curve.make_sampled([[0, 0], [1, 0], [1, 1], [0, 1]])


def test_dense_square_rejected():
    side = np.linspace(0, 1, 9)[:-1]
    pts = np.concatenate(
        [np.column_stack([side, 0 * side]), np.column_stack([1 + 0 * side, side]),
         np.column_stack([1 - side, 1 + 0 * side]), np.column_stack([0 * side, 1 - side])]
    )
    with pytest.raises(NotStrictlyConvexError):
        curve.make_sampled(pts)


def test_double_winding_rejected():
    t = 4 * np.pi * np.arange(64) / 64 + 0.01 * np.arange(64) / 64
    pts = np.column_stack([np.cos(t) * (1 + 0.1 * t), np.sin(t) * (1 + 0.1 * t)])
    with pytest.raises(InvalidCurveError):
        curve.make_sampled(pts)


def test_nonconvex_rejected():
    t = 2 * np.pi * np.arange(128) / 128
    r = 1 + 0.4 * np.cos(3 * t)
    with pytest.raises(NotStrictlyConvexError):
        curve.make_sampled(np.column_stack([r * np.cos(t), r * np.sin(t)]))


def test_repeated_points_rejected():
    pts = _circle(32)
    pts[5] = pts[4]
    with pytest.raises(InvalidInputError):
        curve.make_sampled(pts)


def test_enclosing_examples():
    C = curve.make_sampled(_circle(256))
    r, ctr = curve.enclosing_radius(C)
    assert r == pytest.approx(1, abs=1e-12)
    assert np.allclose(ctr, 0, atol=1e-12)
    r, _ = curve.enclosing_radius(curve.make_ellipse(1, 2))
    assert r == pytest.approx(2, abs=1e-12)
    # obtuse triangle: diameter on the longest side
    (cx, cy), r = curve.minimal_enclosing_circle(np.array([[0.0, 0.0], [4.0, 0.0], [1.0, 0.5]]))
    assert r == pytest.approx(2.0, abs=1e-12)
    assert (cx, cy) == pytest.approx((2.0, 0.0), abs=1e-12)


def test_enclosing_seed_independent():
    rng = np.random.default_rng(1)
    pts = rng.normal(size=(300, 2))
    radii = {round(curve.minimal_enclosing_circle(pts, seed=s)[1], 12) for s in range(5)}
    assert len(radii) == 1
    assert round(_exhaustive_circle(pts[:12]), 9) == round(curve.minimal_enclosing_circle(pts[:12])[1], 9)


@settings(max_examples=40, deadline=None)
@given(
    st.floats(0.2, 5.0), st.floats(0.2, 5.0), st.floats(0.1, 10.0),
)
def test_scaling(A, B, s):
    C = curve.make_ellipse(A, B, 256)
    D = C.scaled(s)
    assert D.omega == pytest.approx(s * C.omega, rel=1e-9)
    assert D.Lambda == pytest.approx(C.Lambda / s, rel=1e-9)
    assert D.lam == pytest.approx(C.lam / s, rel=1e-9)


def test_scaling_sampled():
    C = curve.make_sampled(_ellipse_pts(1.5, 1.0, 256))
    D = C.scaled(3.0)
    assert D.omega == pytest.approx(3 * C.omega, rel=1e-9)
    assert D.Lambda == pytest.approx(C.Lambda / 3, rel=1e-9)
    assert D.lam == pytest.approx(C.lam / 3, rel=1e-9)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.3, 3.0), st.floats(0.3, 3.0), st.floats(0, 2 * math.pi))
def test_sampled_bounds(A, B, rot):
    pts = _ellipse_pts(A, B, 256)
    c, s = math.cos(rot), math.sin(rot)
    pts = pts @ np.array([[c, s], [-s, c]]) + np.array([0.3, -1.2])
    C = curve.make_sampled(pts)
    tol = 1e-6 / C.lam
    assert 1 / C.Lambda - tol <= C.omega <= 1 / C.lam + tol
    assert C.Lambda >= C.lam > 0


def test_spec_round_trip():
    C = curve.curve_from_spec({"kind": "ellipse", "A": 1, "B": 2})
    assert curve.curve_from_spec(C.to_spec()).Lambda == C.Lambda
    S = curve.curve_from_spec({"kind": "points", "data": _circle(64).tolist()})
    assert curve.curve_from_spec(S.to_spec()).omega == S.omega
    with pytest.raises(InvalidInputError):
        curve.curve_from_spec({"kind": "spline"})
    with pytest.raises(InvalidInputError):
        curve.curve_from_spec({"kind": "ellipse", "A": "x", "B": 1})


def test_immutable():
    C = curve.make_ellipse(1, 2, 128)
    with pytest.raises(ValueError):
        C.points[0, 0] = 3.0

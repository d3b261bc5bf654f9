import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from swcert import catenoid
from swcert.errors import DivergentIntegralError, DomainError, InvalidInputError, UnreachableHeightError

SLOPES = (-1.1, -1.5, -2.0, -3.0, -5.0)


def beta_oracle(m0):
    # w^p = 1/u turns the integral into B(1/2 - 1/p, 1/2) / p with p = -2 m0
    p = mpmath.mpf(-2 * m0)
    return float(mpmath.beta(0.5 - 1 / p, mpmath.mpf(0.5)) / p)


@pytest.mark.parametrize("m0", SLOPES)
def test_total_height_beta_oracle(m0):
    assert catenoid.total_height(m0) == pytest.approx(beta_oracle(m0), rel=1e-11)


def test_total_height_minus_two():
    assert catenoid.total_height(-2.0) == pytest.approx(1.3110287771460599, abs=1e-13)
    assert catenoid.total_height(-1.5) >= 2.0


@pytest.mark.parametrize("m0", [-1.0, -0.5, -1e-3])
def test_total_height_divergent(m0):
    with pytest.raises(DivergentIntegralError):
        catenoid.total_height(m0)


def test_height_at_large_radius():
    # w = 1/t maps the profile at x = 1e6 onto int_{1e-6}^1 dt / sqrt(1 - t^4)
    mpmath.mp.dps = 30
    oracle = float(mpmath.quad(lambda t: 1 / mpmath.sqrt(1 - t**4), [mpmath.mpf("1e-6"), 0.5, 1]))
    got = catenoid.height_profile(-2.0, 1.0, 1e6)
    assert abs(got - oracle) <= 1e-10
    assert abs(got - catenoid.total_height(-2.0)) <= 1.01e-6


def test_profile_basic():
    assert catenoid.height_profile(-1.7, 2.0, 2.0) == 0.0
    with pytest.raises(DomainError):
        catenoid.height_profile(-1.0, 1.0, 0.99)
    with pytest.raises(InvalidInputError):
        catenoid.height_profile(0.5, 1.0, 2.0)
    with pytest.raises(InvalidInputError):
        catenoid.height_profile(-1.0, 0.0, 2.0)


@pytest.mark.parametrize("m0", [-0.3, -1.0, -2.5])
def test_profile_increasing(m0):
    s = np.linspace(1.0, 50.0, 300)
    h = [catenoid.height_profile(m0, 1.0, x) for x in s]
    assert np.all(np.diff(h) > 0)
    if m0 < -1:
        assert h[-1] < catenoid.total_height(m0)


@pytest.mark.parametrize("m0", [-0.4, -0.8])
def test_profile_mpmath_oracle_mild_slopes(m0):
    for x in (1.5, 3.0, 40.0):
        oracle = mpmath.quad(lambda w: 1 / mpmath.sqrt(w ** (-2 * m0) - 1), [1, 2, x])
        assert catenoid.normalized_height(m0, x) == pytest.approx(float(oracle), rel=1e-9)


def test_hstar():
    assert catenoid.hstar(-1.5) == 2.0
    assert catenoid.hstar(-0.5) == 1.0
    assert catenoid.hstar(-1.0) == 1.0
    with pytest.raises(InvalidInputError):
        catenoid.hstar(0.0)


def test_radius_at_height_examples():
    for eps in (0.01, 0.5, 2.0):
        assert catenoid.radius_at_height(-1.0, 0.7, eps * 0.7) == pytest.approx(0.7 * math.cosh(eps), rel=1e-10)
    assert catenoid.radius_at_height(-3.0, 2.0, 0.0) == 2.0
    with pytest.raises(UnreachableHeightError):
        catenoid.radius_at_height(-2.0, 1.0, 1.32)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([-0.5, -1.0, -1.3, -2.0, -4.0]), st.floats(0.05, 20.0), st.floats(1.0, 500.0))
def test_round_trip(m0, r0, ratio):
    s = r0 * ratio
    h = catenoid.height_profile(m0, r0, s)
    assert catenoid.radius_at_height(m0, r0, h) == pytest.approx(s, rel=1e-8)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([-0.5, -1.0, -2.0]), st.floats(0.1, 10.0), st.floats(1.0, 100.0), st.floats(0.01, 100.0))
def test_homothety_covariance(m0, r0, ratio, d):
    s = r0 * ratio
    a = catenoid.height_profile(m0, d * r0, d * s)
    b = d * catenoid.height_profile(m0, r0, s)
    assert a == pytest.approx(b, rel=1e-9, abs=1e-300)


@pytest.mark.parametrize("m0, r0, end", [(-1, 1, (-1, 1)), (-2, 0.5, (-4, 2)), (-1, 2, (-0.5, 0.5))])
def test_neck_diagram(m0, r0, end):
    nd = catenoid.neck_diagram(m0, r0)
    assert nd["start"] == (0.0, 0.0) and nd["start_included"] is False
    assert nd["end"] == pytest.approx(end)


def test_profile_object():
    P = catenoid.CatenoidProfile(-2.0, 0.5)
    assert P.bounded
    assert P.total_height_bound == pytest.approx(0.5 * 1.3110287771460599, rel=1e-12)
    assert P.hstar == 1.0
    assert P.radius_at(P.h(3.0)) == pytest.approx(3.0, rel=1e-10)
    Q = catenoid.CatenoidProfile(-0.5, 1.0)
    assert not Q.bounded and Q.total_height_bound == math.inf


def test_mesh_catenary_level():
    mesh = catenoid.revolve_mesh(-1.0, 1.0, 1.0, 16, 32)
    assert mesh.level_radii[-1] == pytest.approx(math.cosh(1.0), abs=1e-9)
    assert mesh.level_radii[-1] == pytest.approx(1.543081, abs=1e-6)
    top = mesh.vertices[-32:]
    assert np.allclose(np.hypot(top[:, 0], top[:, 1]), math.cosh(1.0))
    assert np.allclose(top[:, 2], 1.0)
    assert mesh.vertices.shape == (16 * 32, 3)
    assert mesh.faces.shape == (2 * 15 * 32, 3)


def test_mesh_consistency_and_errors():
    mesh = catenoid.revolve_mesh(-2.0, 1.0, 1.0, 16, 32)
    assert mesh.level_radii[-1] == catenoid.radius_at_height(-2.0, 1.0, 1.0)
    with pytest.raises(InvalidInputError):
        catenoid.revolve_mesh(-1.0, 1.0, 1.0, 16, 4)
    with pytest.raises(UnreachableHeightError):
        catenoid.revolve_mesh(-2.0, 1.0, 1.32, 16, 32)


def test_mesh_mirror_watertight_interior():
    mesh = catenoid.revolve_mesh(-1.0, 1.0, 1.0, 10, 12, mirror=True)
    assert mesh.level_heights[0] == -1.0 and mesh.level_heights[-1] == 1.0
    # every interior edge is shared by exactly two triangles
    edges = {}
    for f in mesh.faces:
        for i in range(3):
            e = tuple(sorted((int(f[i]), int(f[(i + 1) % 3]))))
            edges[e] = edges.get(e, 0) + 1
    boundary = [e for e, k in edges.items() if k == 1]
    assert len(boundary) == 2 * 12
    assert all(k in (1, 2) for k in edges.values())


def test_obj_and_csv():
    mesh = catenoid.revolve_mesh(-1.0, 1.0, 0.5, 8, 8)
    obj = catenoid.mesh_to_obj(mesh)
    lines = obj.splitlines()
    assert sum(l.startswith("v ") for l in lines) == 64
    assert sum(l.startswith("f ") for l in lines) == 2 * 7 * 8
    assert min(int(x) for l in lines if l.startswith("f ") for x in l.split()[1:]) == 1
    csv = catenoid.profile_csv(-1.0, 1.0, 3.0, n=11).splitlines()
    assert csv[0] == "s,h" and len(csv) == 12
    s, h = map(float, csv[-1].split(","))
    assert s == 3.0 and h == pytest.approx(math.acosh(3.0), abs=1e-9)

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from swcert import limacon
from swcert.errors import InvalidInputError, NoInnerLoopError
from swcert.limacon import Limacon, LoopType


@pytest.mark.parametrize("a, c, kind", [(1, 2, LoopType.EMBEDDED), (1, 1, LoopType.CUSP), (5, 2, LoopType.TWO_LOOPS)])
def test_classify(a, c, kind):
    assert limacon.classify(a, c) is kind
    assert Limacon(a, c).loop_type is kind


@pytest.mark.parametrize("a, c", [(0, 1), (1, 0), (-1, 2)])
def test_classify_bad(a, c):
    with pytest.raises(InvalidInputError):
        limacon.classify(a, c)


def test_near_cusp():
    assert limacon.near_cusp(1.0, 1.0 + 1e-14)
    assert not limacon.near_cusp(1.0, 1.0)
    assert not limacon.near_cusp(1.0, 1.1)
    assert limacon.classify(1.0, 1.0 + 1e-14) is LoopType.EMBEDDED


@pytest.mark.parametrize("a, c, theta, rho", [(5, 2, 0, 14), (5, 2, math.pi, -6), (1, 2, math.pi / 2, 4)])
def test_radial(a, c, theta, rho):
    assert Limacon(a, c).radial(theta) == pytest.approx(rho, abs=1e-12)


def test_phi_examples():
    L = Limacon(5, 2)
    assert L.phi(math.pi) == pytest.approx(9, abs=1e-12)
    assert L.phi(0) == pytest.approx(121, abs=1e-12)
    th = np.linspace(0, 2 * np.pi, 200001)
    assert L.phi(th).min() == pytest.approx(27 / 5, rel=1e-8)


def test_points_reproduce_phi():
    L = Limacon(5, 2)
    pts = L.points(64)
    assert len(pts) == 65 and np.allclose(pts[0], pts[-1])
    th = np.linspace(0, 2 * np.pi, 65)
    d2 = (pts[:, 0] - 3) ** 2 + pts[:, 1] ** 2
    assert np.allclose(d2, L.phi(th), rtol=1e-12)


def test_inner_loop_disk_examples():
    d = limacon.inner_loop_disk(5, 2)
    assert d.center == (3, 0)
    assert d.r_in == pytest.approx(2.323790007724450, abs=1e-12)
    assert d.r_out == 3
    d = limacon.inner_loop_disk(2, 1)
    assert d.r_in == pytest.approx(math.sqrt(0.5), abs=1e-15)
    assert d.r_out == 1
    with pytest.raises(NoInnerLoopError):
        limacon.inner_loop_disk(1, 1)
    with pytest.raises(NoInnerLoopError):
        limacon.inner_loop_disk(1, 2)


def test_graph_lemma_radius():
    assert tuple(limacon.graph_lemma_radius(1, 1)) == (1, 1)
    r = limacon.graph_lemma_radius(2, 0.25)
    assert r.r_lower == pytest.approx(0.17677669529663688, abs=1e-15)
    assert r.r_upper == 0.5
    with pytest.raises(InvalidInputError):
        limacon.graph_lemma_radius(0.25, 2)
    with pytest.raises(InvalidInputError):
        limacon.graph_lemma_radius(0, 0)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.01, 100), st.floats(1.0 + 1e-6, 100))
def test_graph_lemma_consistency(lam, ratio):
    Lambda = lam * ratio
    r = limacon.graph_lemma_radius(Lambda, lam)
    assert r.r_lower == limacon.inner_loop_disk(1 / lam, 1 / lam - 1 / Lambda).r_in
    assert r.r_lower == pytest.approx(math.sqrt(lam / Lambda**3), rel=1e-10)
    assert r.r_lower <= r.r_upper


def test_monotonicity():
    rng = np.random.default_rng(3)
    f = lambda a, c: limacon.inner_loop_disk(a, c).r_in
    for _ in range(500):
        c = rng.uniform(0.01, 5)
        a1, a2 = np.sort(c + rng.uniform(1e-3, 5, size=2))
        if a1 < a2:
            assert f(a1, c) < f(a2, c)
        a = rng.uniform(0.1, 5)
        c1, c2 = np.sort(a * rng.uniform(0.01, 0.99, size=2))
        if c1 < c2:
            assert f(a, c1) > f(a, c2)
        d = limacon.inner_loop_disk(a, c1)
        assert d.r_in < d.r_out


def test_svg():
    svg = limacon.limacon_svg(Limacon(5, 2))
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    assert svg.count("<circle") == 3
    assert "viewBox" in svg
    assert limacon.limacon_svg(Limacon(1, 2)).count("<circle") == 1

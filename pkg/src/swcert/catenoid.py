"""
Rotational catenoids of the linear relation ``k2 = m0 * k1`` (``m0 < 0``).

The upper half of the catenoid with neck radius ``r0`` is the graph of
``z = h(s)`` over ``s >= r0`` with

    h(s) = r0 * H(s / r0),    H(x) = int_1^x dw / sqrt(w^(-2 m0) - 1).

``H`` is bounded exactly when ``m0 < -1``; its supremum is the normalized
total height.
"""
from __future__ import annotations

import functools
import io
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import integrate, optimize

from .errors import DivergentIntegralError, DomainError, InvalidInputError, UnreachableHeightError

__all__ = [
    "CatenoidProfile",
    "Mesh",
    "height_profile",
    "normalized_height",
    "total_height",
    "hstar",
    "radius_at_height",
    "neck_diagram",
    "revolve_mesh",
    "mesh_to_obj",
    "profile_csv",
]

_QUAD = dict(epsabs=1e-14, epsrel=1e-13, limit=200)
_SPLIT = 2.0


def _check_m0(m0):
    if not m0 < 0:
        raise InvalidInputError(f"slope m0 must be negative, got {m0!r}")


def _near_part(m0, x):
    """int_1^x with w = 1 + u^2, for 1 <= x <= 2; integrand stays bounded at u = 0."""
    p = -2.0 * m0
    if x <= 1.0:
        return 0.0

    def f(u):
        if u == 0.0:
            return 2.0 / math.sqrt(p)
        return 2.0 * u / math.sqrt(math.expm1(p * math.log1p(u * u)))

    val, _ = integrate.quad(f, 0.0, math.sqrt(x - 1.0), **_QUAD)
    return val


def _far_part(m0, x):
    """int_2^x of the integrand, for x >= 2."""
    if x <= _SPLIT:
        return 0.0
    if m0 < -1.0:
        # v = w^(1+m0) maps [2, x] onto [x^(1+m0), 2^(1+m0)]
        e = 1.0 + m0
        q = 2.0 * m0 / e

        def f(v):
            return 1.0 / math.sqrt(-math.expm1(q * math.log(v)))

        val, _ = integrate.quad(f, x**e, _SPLIT**e, **_QUAD)
        return val / (-e)
    # y = log w; integrand becomes exp(y (1 + m0)) / sqrt(1 - exp(2 m0 y))
    p = -2.0 * m0

    def g(y):
        return math.exp(y * (1.0 + m0)) / math.sqrt(-math.expm1(-p * y))

    val, _ = integrate.quad(g, math.log(_SPLIT), math.log(x), **_QUAD)
    return val


def normalized_height(m0: float, x: float) -> float:
    """``H(x)`` for the unit neck: height above the neck at radius ``x >= 1``."""
    _check_m0(m0)
    if x < 1.0:
        raise DomainError(f"radius ratio {x!r} below the neck")
    if x <= _SPLIT:
        return _near_part(m0, x)
    return _near_part(m0, _SPLIT) + _far_part(m0, x)


def height_profile(m0: float, r0: float, s: float) -> float:
    """Height ``h(s)`` of the section of radius ``s`` above the neck of radius ``r0``."""
    _check_m0(m0)
    if not r0 > 0:
        raise InvalidInputError(f"neck radius must be positive, got {r0!r}")
    if s < r0:
        raise DomainError(f"s={s!r} is smaller than the neck radius r0={r0!r}")
    return r0 * normalized_height(m0, s / r0)


@functools.lru_cache(maxsize=256)
def total_height(m0: float) -> float:
    """Normalized height bound ``int_1^inf dw / sqrt(w^(-2 m0) - 1)``.

    Finite only for ``m0 < -1``. The tail beyond ``w = 2`` is integrated
    in the variable ``v = w^(1+m0)``, which maps it to a finite interval;
    the result is cross-checked against the majorant ``w^m0``.
    """
    _check_m0(m0)
    if m0 >= -1.0:
        raise DivergentIntegralError(f"height is unbounded for -1 <= m0 < 0 (m0={m0!r})")
    e = 1.0 + m0
    q = 2.0 * m0 / e
    tail, _ = integrate.quad(lambda v: 1.0 / math.sqrt(-math.expm1(q * math.log(v))), 0.0, _SPLIT**e, **_QUAD)
    return _near_part(m0, _SPLIT) + tail / (-e)


def hstar(m0: float) -> float:
    """Surrogate height: ``-1/(1+m0)`` if ``m0 < -1``, else 1."""
    if not m0 < 0:
        raise InvalidInputError(f"slope m0 must be negative, got {m0!r}")
    if m0 < -1.0:
        return -1.0 / (1.0 + m0)
    return 1.0


@functools.lru_cache(maxsize=64)
def _grid(m0):
    """Geometric radius grid with cumulative normalized heights, for bracketing."""
    xs = [1.0]
    hs = [0.0]
    x = 1.0
    while x < 1e12:
        nx = x * 1.25 if x > 1.0 else 1.0 + 1e-6
        hs.append(hs[-1] + _segment(m0, x, nx))
        xs.append(nx)
        x = nx
    xs = np.array(xs)
    hs = np.array(hs)
    xs.setflags(write=False)
    hs.setflags(write=False)
    return xs, hs


def _segment(m0, x0, x1):
    if x1 <= _SPLIT:
        return _near_part(m0, x1) - _near_part(m0, x0)
    if x0 >= _SPLIT:
        return _far_part(m0, x1) - _far_part(m0, x0)
    return (_near_part(m0, _SPLIT) - _near_part(m0, x0)) + _far_part(m0, x1)


def radius_at_height(m0: float, r0: float, target_h: float) -> float:
    """Radius of the horizontal section at height ``target_h`` above the neck.

    The root is bracketed on a memoized grid and refined by bisection.

    Raises
    ------
    UnreachableHeightError
        If ``target_h`` is not below the height bound ``r0 * total_height(m0)``.
    """
    _check_m0(m0)
    if not r0 > 0:
        raise InvalidInputError(f"neck radius must be positive, got {r0!r}")
    if target_h < 0:
        raise InvalidInputError(f"height must be nonnegative, got {target_h!r}")
    if target_h == 0:
        return float(r0)
    tau = target_h / r0
    if m0 < -1.0 and tau >= total_height(m0):
        raise UnreachableHeightError(
            f"height {target_h!r} is not below the bound {r0 * total_height(m0)!r} for m0={m0!r}"
        )
    xs, hs = _grid(m0)
    k = int(np.searchsorted(hs, tau, side="left"))
    if k >= len(xs):
        lo, hi = xs[-1], 2.0 * xs[-1]
        while normalized_height(m0, hi) < tau:
            lo, hi = hi, 2.0 * hi
            if not math.isfinite(hi):
                raise UnreachableHeightError(f"height {target_h!r} is numerically unreachable")
    else:
        lo, hi = xs[max(k - 1, 0)], xs[k]
    if normalized_height(m0, hi) == tau:
        return r0 * hi
    x = optimize.bisect(
        lambda x: normalized_height(m0, x) - tau, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=200
    )
    return r0 * x


def neck_diagram(m0: float, r0: float):
    """Curvature diagram of the catenoid: the segment from the origin (excluded)
    to the neck point, written in the order ``(m0/r0, 1/r0)``."""
    _check_m0(m0)
    if not r0 > 0:
        raise InvalidInputError(f"neck radius must be positive, got {r0!r}")
    return {"start": (0.0, 0.0), "start_included": False, "end": (m0 / r0, 1.0 / r0)}


@dataclass(frozen=True)
class CatenoidProfile:
    """Catenoid of slope ``m0`` and neck radius ``r0``."""

    m0: float
    r0: float

    def __post_init__(self):
        _check_m0(self.m0)
        if not self.r0 > 0:
            raise InvalidInputError(f"neck radius must be positive, got {self.r0!r}")

    def h(self, s: float) -> float:
        return height_profile(self.m0, self.r0, s)

    def radius_at(self, height: float) -> float:
        return radius_at_height(self.m0, self.r0, height)

    @property
    def bounded(self) -> bool:
        return self.m0 < -1.0

    @property
    def total_height_bound(self) -> float:
        if not self.bounded:
            return math.inf
        return self.r0 * total_height(self.m0)

    @property
    def hstar(self) -> float:
        return hstar(self.m0)

    def neck_diagram(self):
        return neck_diagram(self.m0, self.r0)


class Mesh(NamedTuple):
    vertices: np.ndarray  # (nv_total, 3)
    faces: np.ndarray  # (nf, 3), zero based
    level_radii: np.ndarray
    level_heights: np.ndarray


def revolve_mesh(m0, r0, height_cap, nu, nv, mirror=False) -> Mesh:
    """Triangulated truncated catenoid between the neck and ``height_cap``.

    ``nu`` levels uniformly spaced in height, ``nv`` vertices per level.
    With ``mirror=True`` the reflected copy below the neck plane is added,
    sharing the neck ring.
    """
    if nu < 8 or nv < 8:
        raise InvalidInputError(f"need nu, nv >= 8, got nu={nu}, nv={nv}")
    if not height_cap > 0:
        raise InvalidInputError(f"height cap must be positive, got {height_cap!r}")
    z = np.linspace(0.0, height_cap, nu)
    radii = np.array([radius_at_height(m0, r0, float(zi)) for zi in z])
    if mirror:
        z = np.concatenate([-z[:0:-1], z])
        radii = np.concatenate([radii[:0:-1], radii])
    ang = 2.0 * np.pi * np.arange(nv) / nv
    ca, sa = np.cos(ang), np.sin(ang)
    verts = np.column_stack(
        [np.outer(radii, ca).ravel(), np.outer(radii, sa).ravel(), np.repeat(z, nv)]
    )
    faces = []
    for i in range(len(z) - 1):
        for j in range(nv):
            a = i * nv + j
            b = i * nv + (j + 1) % nv
            c = (i + 1) * nv + j
            d = (i + 1) * nv + (j + 1) % nv
            faces.append((a, b, d))
            faces.append((a, d, c))
    return Mesh(verts, np.array(faces, dtype=np.int64), radii, z)


def mesh_to_obj(mesh: Mesh) -> str:
    out = io.StringIO()
    out.write("# truncated catenoid\n")
    for x, y, zz in mesh.vertices:
        out.write(f"v {x:.12g} {y:.12g} {zz:.12g}\n")
    for a, b, c in mesh.faces:
        out.write(f"f {a + 1} {b + 1} {c + 1}\n")
    return out.getvalue()


def profile_csv(m0, r0, s_max, n=200) -> str:
    """CSV text with columns ``s,h`` sampled on ``[r0, s_max]``."""
    s = np.linspace(r0, s_max, n)
    lines = ["s,h"]
    for si in s:
        lines.append(f"{si:.12g},{height_profile(m0, r0, si):.12g}")
    return "\n".join(lines) + "\n"

"""
Closed strictly convex planar curves.

A :class:`ConvexCurve` carries a dense ordered sample of points with their
curvature, together with the three scalars the certification needs: the
maximal curvature ``Lambda``, the minimal curvature ``lam`` and the radius
``omega`` of the smallest enclosing circle.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import InvalidCurveError, InvalidInputError, NotStrictlyConvexError

__all__ = [
    "ConvexCurve",
    "make_ellipse",
    "make_sampled",
    "enclosing_radius",
    "minimal_enclosing_circle",
    "curve_from_spec",
]

DEFAULT_SAMPLES = 1024
# half-width of the local interpolation stencil used for sampled curves
_STENCIL = 3


@dataclass(frozen=True)
class ConvexCurve:
    """Immutable strictly convex closed curve.

    Attributes
    ----------
    kind : str
        ``"ellipse"`` or ``"sampled"``.
    params : dict
        Construction parameters (``A``, ``B`` for ellipses).
    points : ndarray, shape (n, 2)
        Counter-clockwise sample points.
    curvature : ndarray, shape (n,)
        Curvature at each sample point (positive).
    Lambda, lam : float
        Maximum and minimum curvature.
    omega : float
        Radius of the smallest enclosing circle.
    center : tuple of float
        Center of the smallest enclosing circle.
    """

    kind: str
    params: dict
    points: np.ndarray = field(repr=False)
    curvature: np.ndarray = field(repr=False)
    Lambda: float
    lam: float
    omega: float
    center: tuple
    argmax: int = field(repr=False, default=0)
    argmin: int = field(repr=False, default=0)

    @property
    def is_circle(self) -> bool:
        """True when the curvature is constant up to 1e-9 relative."""
        return bool(self.Lambda - self.lam <= 1e-9 * self.Lambda)

    def scaled(self, s: float) -> "ConvexCurve":
        """Return the curve dilated by ``s`` about the origin."""
        if not s > 0:
            raise InvalidInputError(f"scale factor must be positive, got {s!r}")
        if self.kind == "ellipse":
            return make_ellipse(s * self.params["A"], s * self.params["B"], len(self.points))
        return make_sampled(s * self.params["data"])

    def to_spec(self) -> dict:
        if self.kind == "ellipse":
            return {"kind": "ellipse", "A": self.params["A"], "B": self.params["B"]}
        return {"kind": "points", "data": np.asarray(self.params["data"]).tolist()}


def _freeze(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


def _golden_extremum(f, lo, hi, maximize):
    sign = -1.0 if maximize else 1.0
    res = minimize_scalar(
        lambda x: sign * f(x), bounds=(lo, hi), method="bounded", options={"xatol": 1e-12}
    )
    return f(res.x)


def make_ellipse(A: float, B: float, n: int = DEFAULT_SAMPLES, seed: int = 0) -> ConvexCurve:
    """Ellipse ``x^2/A^2 + y^2/B^2 = 1`` sampled at ``n`` parameter values.

    Curvature uses the closed form ``AB / (A^2 sin^2 t + B^2 cos^2 t)^(3/2)``;
    the extremes found on the grid are polished by a bounded scalar search.
    """
    if not (A > 0 and B > 0):
        raise InvalidInputError(f"ellipse semi-axes must be positive, got A={A!r}, B={B!r}")
    if n < 64:
        raise InvalidInputError(f"need at least 64 samples, got {n}")
    A = float(A)
    B = float(B)

    def kappa(t):
        return A * B / (A**2 * np.sin(t) ** 2 + B**2 * np.cos(t) ** 2) ** 1.5

    t = 2.0 * np.pi * np.arange(n) / n
    pts = np.column_stack([A * np.cos(t), B * np.sin(t)])
    k = kappa(t)
    i_max, i_min = int(np.argmax(k)), int(np.argmin(k))
    dt = 2.0 * np.pi / n
    Lambda = max(float(k[i_max]), _golden_extremum(kappa, t[i_max] - dt, t[i_max] + dt, True))
    lam = min(float(k[i_min]), _golden_extremum(kappa, t[i_min] - dt, t[i_min] + dt, False))
    (cx, cy), omega = minimal_enclosing_circle(pts, seed=seed)
    return ConvexCurve(
        kind="ellipse",
        params={"A": A, "B": B},
        points=_freeze(pts),
        curvature=_freeze(k),
        Lambda=Lambda,
        lam=lam,
        omega=omega,
        center=(cx, cy),
        argmax=i_max,
        argmin=i_min,
    )


def _local_poly(chord, pts, i):
    """Interpolating polynomials for x and y around vertex ``i``.

    The parameter is cumulative chord length measured from vertex ``i``.
    Returns coefficient arrays (highest degree first) and the parameter
    offsets of the neighbouring vertices.
    """
    n = len(pts)
    idx = np.arange(i - _STENCIL, i + _STENCIL + 1)
    s = chord[(idx + n) % n] + np.floor_divide(idx, n) * chord[-1] - chord[i]
    # chord has n+1 entries: chord[n] is the perimeter
    xy = pts[idx % n]
    scale = max(abs(s[0]), abs(s[-1]))
    u = s / scale
    deg = 2 * _STENCIL
    cx = np.polyfit(u, xy[:, 0], deg)
    cy = np.polyfit(u, xy[:, 1], deg)
    return cx, cy, scale, u


def _poly_curvature(cx, cy, scale, u):
    dx = np.polyval(np.polyder(cx), u) / scale
    dy = np.polyval(np.polyder(cy), u) / scale
    ddx = np.polyval(np.polyder(cx, 2), u) / scale**2
    ddy = np.polyval(np.polyder(cy, 2), u) / scale**2
    return (dx * ddy - dy * ddx) / (dx * dx + dy * dy) ** 1.5


def _check_polygon(pts):
    """Validate traversal order; returns the points oriented counter-clockwise."""
    e = np.roll(pts, -1, axis=0) - pts
    lengths = np.hypot(e[:, 0], e[:, 1])
    if np.any(lengths <= 1e-14 * max(1.0, float(np.max(np.abs(pts))))):
        raise InvalidInputError("sample points must not repeat")
    area = 0.5 * float(np.sum(pts[:, 0] * np.roll(pts[:, 1], -1) - np.roll(pts[:, 0], -1) * pts[:, 1]))
    if area < 0:
        pts = pts[::-1].copy()
        e = np.roll(pts, -1, axis=0) - pts
        lengths = np.hypot(e[:, 0], e[:, 1])
    e_prev = np.roll(e, 1, axis=0)
    cross = e_prev[:, 0] * e[:, 1] - e_prev[:, 1] * e[:, 0]
    dot = np.sum(e_prev * e, axis=1)
    turn = np.arctan2(cross, dot)
    total = float(np.sum(turn))
    if abs(total - 2.0 * np.pi) > 1e-6:
        raise InvalidCurveError(
            f"total turning is {total:.6g} rad, not 2*pi: curve self-intersects or is not closed"
        )
    if np.any(cross <= 1e-12 * np.roll(lengths, 1) * lengths):
        bad = int(np.argmin(cross))
        raise NotStrictlyConvexError(f"turning is not strictly positive at vertex {bad}")
    return pts


def make_sampled(points: Sequence[Sequence[float]], seed: int = 0) -> ConvexCurve:
    """Closed curve through ``points`` (traversal order, not repeated).

    Curvature at each vertex comes from a local degree-6 interpolating
    polynomial in the chord-length parameter (7-point stencil, periodic).
    Extremes are refined by a bounded search on the local polynomial.

    Raises
    ------
    InvalidInputError
        Repeated consecutive points.
    NotStrictlyConvexError
        Fewer than 8 points, a nonpositive turn, or a nonpositive curvature
        estimate.
    InvalidCurveError
        The polygon winds more than once (self-intersection).
    """
    raw = np.asarray(points, dtype=float)
    if raw.ndim != 2 or raw.shape[1] != 2:
        raise InvalidInputError("points must be a list of [x, y] pairs")
    if len(raw) < 8:
        # too sparse to be read as samples of a smooth curve: as a polygon its
        # curvature vanishes on the edges
        raise NotStrictlyConvexError(
            f"{len(raw)} points define a polygon, not a strictly convex curve (need at least 8 samples)"
        )
    if not np.all(np.isfinite(raw)):
        raise InvalidInputError("points must be finite")
    pts = _check_polygon(raw)
    n = len(pts)
    seg = np.hypot(*(np.roll(pts, -1, axis=0) - pts).T)
    chord = np.concatenate([[0.0], np.cumsum(seg)])

    k = np.empty(n)
    polys = []
    for i in range(n):
        cx, cy, scale, u = _local_poly(chord, pts, i)
        polys.append((cx, cy, scale, u))
        k[i] = _poly_curvature(cx, cy, scale, 0.0)
    if np.any(k <= 0):
        bad = int(np.argmin(k))
        raise NotStrictlyConvexError(
            f"estimated curvature {k[bad]:.3g} is not positive at vertex {bad}"
        )

    def refine(i, maximize):
        cx, cy, scale, u = polys[i]
        f = lambda x: float(_poly_curvature(cx, cy, scale, x))
        return _golden_extremum(f, u[_STENCIL - 1], u[_STENCIL + 1], maximize)

    i_max, i_min = int(np.argmax(k)), int(np.argmin(k))
    Lambda = max(float(k[i_max]), refine(i_max, True))
    lam = min(float(k[i_min]), refine(i_min, False))
    (cx, cy), omega = minimal_enclosing_circle(pts, seed=seed)
    return ConvexCurve(
        kind="sampled",
        params={"data": _freeze(raw)},
        points=_freeze(pts),
        curvature=_freeze(k),
        Lambda=Lambda,
        lam=lam,
        omega=omega,
        center=(cx, cy),
        argmax=i_max,
        argmin=i_min,
    )


def _circle_two(p, q):
    cx = 0.5 * (p[0] + q[0])
    cy = 0.5 * (p[1] + q[1])
    return cx, cy, 0.5 * math.hypot(p[0] - q[0], p[1] - q[1])


def _circle_three(p, q, r):
    ax, ay = p
    bx, by = q
    cx, cy = r
    d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if d == 0.0:
        # collinear: the widest pair determines the circle
        return max((_circle_two(p, q), _circle_two(p, r), _circle_two(q, r)), key=lambda c: c[2])
    a2 = ax * ax + ay * ay
    b2 = bx * bx + by * by
    c2 = cx * cx + cy * cy
    ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d
    uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d
    rad = max(math.hypot(ux - ax, uy - ay), math.hypot(ux - bx, uy - by), math.hypot(ux - cx, uy - cy))
    return ux, uy, rad


def _inside(c, p, tol):
    return math.hypot(p[0] - c[0], p[1] - c[1]) <= c[2] + tol


def minimal_enclosing_circle(points, seed: int = 0):
    """Smallest circle containing ``points``.

    Randomized incremental construction (expected linear time). The
    shuffle is seeded so repeated calls give identical results.

    Returns
    -------
    ((cx, cy), radius)
    """
    pts = [(float(x), float(y)) for x, y in np.asarray(points, dtype=float)]
    if not pts:
        raise InvalidInputError("no points")
    random.Random(seed).shuffle(pts)
    span = max(max(abs(x), abs(y)) for x, y in pts)
    tol = 1e-12 * max(span, 1e-300)

    c = (pts[0][0], pts[0][1], 0.0)
    for i in range(1, len(pts)):
        p = pts[i]
        if _inside(c, p, tol):
            continue
        c = (p[0], p[1], 0.0)
        for j in range(i):
            q = pts[j]
            if _inside(c, q, tol):
                continue
            c = _circle_two(p, q)
            for k in range(j):
                r = pts[k]
                if not _inside(c, r, tol):
                    c = _circle_three(p, q, r)
    return (c[0], c[1]), c[2]


def enclosing_radius(curve: ConvexCurve, seed: int = 0):
    """Radius and center of the smallest circle enclosing the curve samples.

    Returns
    -------
    (radius, (cx, cy))
    """
    center, radius = minimal_enclosing_circle(curve.points, seed=seed)
    return radius, center


def curve_from_spec(spec: dict, n: int = DEFAULT_SAMPLES, seed: int = 0) -> ConvexCurve:
    """Build a curve from its JSON form.

    ``{"kind": "ellipse", "A": 1.0, "B": 2.0}`` or
    ``{"kind": "points", "data": [[x, y], ...]}``.
    """
    if not isinstance(spec, dict):
        raise InvalidInputError("curve specification must be a JSON object")
    kind = spec.get("kind")
    if kind == "ellipse":
        try:
            A = float(spec["A"])
            B = float(spec["B"])
        except (KeyError, TypeError, ValueError):
            raise InvalidInputError("ellipse needs numeric 'A' and 'B'") from None
        return make_ellipse(A, B, int(spec.get("n", n)), seed=seed)
    if kind == "points":
        if "data" not in spec:
            raise InvalidInputError("points curve needs 'data'")
        return make_sampled(spec["data"], seed=seed)
    raise InvalidInputError(f"unknown curve kind {kind!r}")

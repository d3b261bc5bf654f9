"""
Elliptic Weingarten classes ``k2 = g(k1)`` on a domain ``[alpha, b)``.

Every "for all t" hypothesis is checked on a finite grid. The grids are
uniform plus geometrically refined toward a finite right endpoint, and
each check reports the horizon it actually covered.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional

import numpy as np
from scipy import optimize

from . import gexpr
from .errors import (
    EvaluationError,
    InvalidInputError,
    NotEllipticError,
    NotUmbilicError,
    PreconditionError,
)

__all__ = [
    "WeingartenType",
    "WeingartenClass",
    "GridCheck",
    "build",
    "from_spec",
    "linear_cmc",
    "linear_weingarten",
    "homothety",
    "check_assumption1",
    "check_condition_E",
    "diagram_dominates",
    "validation_grid",
]

GRID_SIZE = 2048
UMBILIC_RTOL = 1e-10
# horizon multiplier used when b is infinite and no horizon is given
DEFAULT_HORIZON_FACTOR = 1e3
# doublings past the grid when looking for a zero on an unbounded domain
PROBE_STEPS = 64


class WeingartenType(str, enum.Enum):
    MINIMAL = "MinimalType"
    CMC = "CMCType"
    CGC = "CGCType"


def validation_grid(lo: float, hi: float, finite_end: bool, n: int = GRID_SIZE) -> np.ndarray:
    """Sorted grid on ``[lo, hi)`` (or ``[lo, hi]`` when ``finite_end`` is False).

    With ``finite_end`` the grid excludes ``hi`` and clusters geometrically
    toward it, down to a gap of ``1e-9 (hi - lo)``.
    """
    if not hi > lo:
        return np.array([lo])
    width = hi - lo
    uniform = np.linspace(lo, hi, n)
    if finite_end:
        uniform = uniform[:-1]
        gaps = width * np.geomspace(0.5, 1e-9, n)
        grid = np.concatenate([uniform, hi - gaps])
    else:
        grid = np.concatenate([uniform, lo + width * np.geomspace(1e-9, 1.0, n)])
    grid = np.unique(grid[(grid >= lo) & ((grid < hi) if finite_end else (grid <= hi))])
    return grid


def _eval_many(g, ts):
    out = np.empty(len(ts))
    for i, t in enumerate(ts):
        out[i] = g(float(t))
    return out


@dataclass(frozen=True)
class WeingartenClass:
    """A validated relation ``k2 = g(k1)``.

    ``source`` keeps the JSON-able description used to build it; a class
    obtained by homothety records the ratio in ``scale``.
    """

    g: Callable[[float], float] = field(repr=False, compare=False)
    alpha: float
    b: float
    type_tag: WeingartenType
    beta: Optional[float] = None
    source: dict = field(default_factory=dict, compare=False)
    scale: float = 1.0

    def __call__(self, t):
        return self.g(t)

    @property
    def is_cmc(self) -> bool:
        return self.type_tag is WeingartenType.CMC

    def grid(self, horizon: Optional[float] = None, n: int = GRID_SIZE):
        """Grid on the domain, truncated at ``horizon`` for unbounded domains."""
        if math.isinf(self.b):
            hi = horizon if horizon is not None else _default_horizon(self.alpha)
            return validation_grid(self.alpha, hi, False, n)
        return validation_grid(self.alpha, self.b, True, n)


def _default_horizon(alpha):
    return max(alpha, 1.0) * DEFAULT_HORIZON_FACTOR


def build(g, alpha: float, b: float = math.inf, source: Optional[dict] = None) -> WeingartenClass:
    """Validate ``g`` on ``[alpha, b)`` and classify the class.

    ``g`` may be a callable, an expression string, or a parsed expression.

    Raises
    ------
    NotUmbilicError
        If ``g(alpha) != alpha`` beyond ``1e-10`` relative.
    NotEllipticError
        If ``g`` fails to be strictly decreasing on the validation grid.
    """
    if isinstance(g, str):
        source = source or {"expr": g, "alpha": alpha, "b": b}
        g = gexpr.Compiled(g)
    elif not callable(g):
        tree = g
        g = lambda t: gexpr.evaluate(tree, t)
    alpha = float(alpha)
    b = float(b)
    if not alpha >= 0:
        raise InvalidInputError(f"alpha must be nonnegative, got {alpha!r}")
    if not b > alpha:
        raise InvalidInputError(f"domain end b={b!r} must exceed alpha={alpha!r}")

    try:
        g_alpha = g(alpha)
    except EvaluationError as exc:
        raise InvalidInputError(f"g cannot be evaluated at alpha: {exc}") from None
    if abs(g_alpha - alpha) > UMBILIC_RTOL * max(abs(alpha), 1.0):
        raise NotUmbilicError(f"g(alpha) = {g_alpha!r} differs from alpha = {alpha!r}")

    ts = validation_grid(alpha, b if math.isfinite(b) else _default_horizon(alpha), math.isfinite(b))
    try:
        vals = _eval_many(g, ts)
    except EvaluationError as exc:
        raise InvalidInputError(f"g is not evaluable on [alpha, b): {exc}") from None
    steps = np.diff(vals)
    if np.any(steps >= 0):
        k = int(np.argmax(steps >= 0))
        raise NotEllipticError(
            f"g is not strictly decreasing near t = {ts[k]:.6g} (g' >= 0 detected)"
        )

    if math.isinf(b) and alpha > 0.0 and vals[-1] > 0:
        # a zero may sit past the grid: probe geometrically, keeping the monotonicity check
        ts, vals = _probe_beyond(g, ts, vals)

    beta = None
    if alpha == 0.0:
        tag = WeingartenType.MINIMAL
    elif np.any(vals <= 0):
        tag = WeingartenType.CMC
        k = int(np.argmax(vals <= 0))
        if vals[k] == 0:
            beta = float(ts[k])
        else:
            beta = optimize.brentq(
                lambda t: g(t), float(ts[k - 1]), float(ts[k]), xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500
            )
    else:
        tag = WeingartenType.CGC
    return WeingartenClass(g=g, alpha=alpha, b=b, type_tag=tag, beta=beta, source=source or {})


def _probe_beyond(g, ts, vals, factor=2.0, steps=PROBE_STEPS):
    t, last = float(ts[-1]), float(vals[-1])
    extra_t, extra_v = [], []
    for _ in range(steps):
        t *= factor
        try:
            v = g(t)
        except EvaluationError:
            break
        if not v < last:
            raise NotEllipticError(f"g is not strictly decreasing near t = {t:.6g} (g' >= 0 detected)")
        extra_t.append(t)
        extra_v.append(v)
        last = v
        if v <= 0:
            break
    return np.concatenate([ts, extra_t]), np.concatenate([vals, extra_v])


def linear_cmc(H: float) -> WeingartenClass:
    """Constant mean curvature ``H``: ``g(t) = 2H - t`` on ``[H, inf)``."""
    if not H > 0:
        raise InvalidInputError(f"H must be positive, got {H!r}")
    return build(lambda t: 2.0 * H - t, H, math.inf, source={"family": "linear_cmc", "H": H})


def linear_weingarten(c: float, alpha: float) -> WeingartenClass:
    """``g(t) = (1 - c) alpha + c t`` with slope ``c < 0``."""
    if not c < 0:
        raise InvalidInputError(f"slope c must be negative, got {c!r}")
    return build(
        lambda t: (1.0 - c) * alpha + c * t,
        alpha,
        math.inf,
        source={"family": "linear_weingarten", "c": c, "alpha": alpha},
    )


def from_spec(spec: dict) -> WeingartenClass:
    """Build from JSON: ``{"expr": ..., "alpha": ..., "b": ...}`` or a family."""
    if not isinstance(spec, dict):
        raise InvalidInputError("g specification must be a JSON object")
    try:
        if "expr" in spec:
            b = spec.get("b")
            b = math.inf if b is None else float(b)
            return build(str(spec["expr"]), float(spec["alpha"]), b, source=dict(spec))
        family = spec.get("family")
        if family == "linear_cmc":
            return linear_cmc(float(spec["H"]))
        if family == "linear_weingarten":
            return linear_weingarten(float(spec["c"]), float(spec["alpha"]))
    except KeyError as exc:
        raise InvalidInputError(f"g specification is missing {exc}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InvalidInputError):
            raise
        raise InvalidInputError(f"bad g specification: {exc}") from None
    raise InvalidInputError("g specification needs 'expr' or a known 'family'")


def homothety(W: WeingartenClass, d: float) -> WeingartenClass:
    """Class of surfaces rescaled by ``1/d``: ``g~(t) = g(d t) / d`` on ``[alpha/d, b/d)``."""
    if not d > 0:
        raise InvalidInputError(f"homothety ratio must be positive, got {d!r}")
    g = W.g
    d = float(d)
    return WeingartenClass(
        g=lambda t: g(d * t) / d,
        alpha=W.alpha / d,
        b=W.b / d,
        type_tag=W.type_tag,
        beta=None if W.beta is None else W.beta / d,
        source=W.source,
        scale=W.scale * d,
    )


class GridCheck(NamedTuple):
    """Outcome of a grid-verified inequality ``lhs(t) - rhs(t) >= 0``."""

    holds: bool
    min_margin: float
    verified_up_to: float
    clamped: bool
    argmin: float

    def __bool__(self):
        return self.holds


def check_assumption1(W: WeingartenClass, m0: float, horizon: float, n: int = GRID_SIZE) -> GridCheck:
    """Check ``g(t) >= (1 - m0) alpha + m0 t`` on ``[alpha, min(horizon, b))``.

    A horizon at or beyond a finite ``b`` is clamped and flagged. Rounding
    at the level of ``1e-12`` of the compared values is tolerated.
    """
    if not m0 < 0:
        raise InvalidInputError(f"m0 must be negative, got {m0!r}")
    if not W.alpha > 0:
        raise PreconditionError("the line comparison needs alpha > 0")
    if not horizon > W.alpha:
        raise PreconditionError(f"horizon {horizon!r} must exceed alpha {W.alpha!r}")
    clamped = math.isfinite(W.b) and horizon >= W.b
    hi = W.b if clamped else horizon
    ts = validation_grid(W.alpha, hi, clamped, n)
    line = (1.0 - m0) * W.alpha + m0 * ts
    gv = _eval_many(W.g, ts)
    margin = gv - line
    k = int(np.argmin(margin))
    scale = np.maximum(1.0, np.maximum(np.abs(gv), np.abs(line)))
    holds = bool(np.all(margin >= -1e-12 * scale))
    return GridCheck(holds, float(margin[k]), float(ts[-1]), clamped, float(ts[k]))


def check_condition_E(W: WeingartenClass, m0: float, r_gamma: float, n: int = GRID_SIZE) -> GridCheck:
    """Check ``g(t) > m0 t`` for ``t`` in ``[alpha, 1/r_gamma]`` (strict)."""
    if not r_gamma > 0:
        raise InvalidInputError(f"r_gamma must be positive, got {r_gamma!r}")
    top = 1.0 / r_gamma
    if not (W.alpha > 0 and W.alpha <= top):
        raise PreconditionError(f"need 0 < alpha <= 1/r_gamma, got alpha={W.alpha!r}, 1/r={top!r}")
    clamped = math.isfinite(W.b) and top >= W.b
    if clamped:
        ts = validation_grid(W.alpha, W.b, True, n)
    else:
        ts = validation_grid(W.alpha, top, False, n)
    margin = _eval_many(W.g, ts) - m0 * ts
    k = int(np.argmin(margin))
    return GridCheck(bool(np.all(margin > 0)), float(margin[k]), float(ts[-1]), clamped, float(ts[k]))


def diagram_dominates(W1: WeingartenClass, W2: WeingartenClass, horizon: Optional[float] = None, n: int = GRID_SIZE) -> bool:
    """Comparability hypothesis of the tangency principle for ``W1`` below ``W2``.

    True iff ``alpha1 <= alpha2``, ``b1 <= b2`` and ``g1 <= g2`` on a grid
    over ``[alpha2, b2)`` intersected with the domain of ``g1``.
    """
    if not (W1.alpha <= W2.alpha and W1.b <= W2.b):
        return False
    top = min(W1.b, W2.b)
    if math.isinf(top):
        hi = horizon if horizon is not None else _default_horizon(W2.alpha)
        ts = validation_grid(W2.alpha, hi, False, n)
    elif top <= W2.alpha:
        return True
    else:
        ts = validation_grid(W2.alpha, top, True, n)
    g1 = _eval_many(W1.g, ts)
    g2 = _eval_many(W2.g, ts)
    tol = 1e-12 * np.maximum(1.0, np.abs(g2))
    return bool(np.all(g1 <= g2 + tol))

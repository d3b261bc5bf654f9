"""
Hypothesis checkers for the two disk-type theorems.

``theorem1_threshold`` computes the homothety threshold ``d0`` above which
rescaled CMC-type classes are covered. ``theorem2_check`` evaluates the
explicit pinching conditions on ``alpha`` and ``beta``. The general check
``general_conditions_check`` evaluates conditions A-E for a user-chosen
catenoid slope and truncation height.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import optimize

from . import catenoid
from .errors import (
    DomainError,
    InvalidInputError,
    MissingHypothesisError,
    NotCMCTypeError,
    UndefinedRdError,
    UnreachableHeightError,
)
from .limacon import graph_lemma_radius
from .weingarten import GridCheck, WeingartenClass, check_assumption1, check_condition_E

__all__ = [
    "Condition",
    "CertificationReport",
    "r_d_value",
    "j_value",
    "s0_solve",
    "s0_theorem2",
    "c_constant",
    "c_branches",
    "theorem1_threshold",
    "theorem1_inequalities",
    "theorem2_check",
    "general_conditions_check",
    "sig12",
]

SIG_DIGITS = 12


def sig12(x):
    """Round to 12 significant digits (round-half-even on the binary value)."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return x
    x = float(x)
    if not math.isfinite(x):
        return "inf" if x > 0 else ("-inf" if x < 0 else "nan")
    return float(f"{x:.{SIG_DIGITS}g}")


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.generic):
        obj = obj.item()
    if isinstance(obj, float):
        return sig12(obj)
    return obj


@dataclass(frozen=True)
class Condition:
    """One inequality; ``margin >= 0`` means satisfied (``> 0`` when strict)."""

    name: str
    margin: float
    strict: bool = True
    informational: bool = False

    @property
    def holds(self) -> bool:
        return self.margin > 0 if self.strict else self.margin >= 0

    def to_dict(self):
        return {
            "name": self.name,
            "holds": self.holds,
            "margin": sig12(self.margin),
            "strict": self.strict,
            "informational": self.informational,
        }


@dataclass
class CertificationReport:
    mode: str
    inputs: dict
    intermediates: dict
    conditions: list
    d0: Optional[float] = None
    thresholds: dict = field(default_factory=dict)
    flags: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.holds for c in self.conditions if not c.informational)

    @property
    def overall(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def condition(self, name) -> Condition:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        inputs = dict(self.inputs)
        inputs["mode"] = self.mode
        inputs["flags"] = list(self.flags)
        inter = dict(self.intermediates)
        if self.thresholds:
            inter["d_thresholds"] = dict(self.thresholds)
        return {
            "inputs": _clean(inputs),
            "intermediates": _clean(inter),
            "conditions": [c.to_dict() for c in self.conditions],
            "overall": self.overall,
            "d0": sig12(self.d0),
        }


def r_d_value(d: float, alpha: float, h_star: float) -> float:
    """Radius ``sqrt(2 d h*/alpha - h*^2)`` of the cap of height ``h*`` on the sphere of radius ``d/alpha``."""
    if not (alpha > 0 and h_star > 0):
        raise InvalidInputError("alpha and h_star must be positive")
    if not d > 0.5 * alpha * h_star:
        raise UndefinedRdError(f"r_d needs d > alpha h*/2 = {0.5 * alpha * h_star!r}, got d={d!r}")
    return math.sqrt(2.0 * d * h_star / alpha - h_star * h_star)


def j_value(s: float, omega: float) -> float:
    """``sqrt((s - 2 omega)^3 / (s - omega))``, increasing on ``s >= 2 omega``."""
    if not omega > 0:
        raise InvalidInputError(f"omega must be positive, got {omega!r}")
    if s < 2.0 * omega:
        raise DomainError(f"j is defined for s >= 2 omega = {2.0 * omega!r}, got s={s!r}")
    return math.sqrt((s - 2.0 * omega) ** 3 / (s - omega))


def s0_solve(omega: float, target: float) -> float:
    """Smallest ``s >= 2 omega`` with ``j(s) = target``.

    The bracket ``[2 omega, target + 9 omega / 2]`` is valid because
    ``j(s) > s - 5 omega / 2``.
    """
    if not omega > 0:
        raise InvalidInputError(f"omega must be positive, got {omega!r}")
    if target < 0:
        raise InvalidInputError(f"target must be nonnegative, got {target!r}")
    lo = 2.0 * omega
    if target == 0:
        return lo
    hi = target + 4.5 * omega
    return optimize.bisect(
        lambda s: j_value(s, omega) - target, lo, hi, xtol=1e-300, rtol=4 * 2.220446049250313e-16, maxiter=400
    )


def s0_theorem2(lam: float, r_gamma: float, eps: float) -> float:
    """Explicit sufficient choice ``9/(2 lam) + r (cosh eps - 1)``."""
    return 4.5 / lam + r_gamma * (math.cosh(eps) - 1.0)


def _check_eps(eps):
    if not 0 < eps < 2.0 / 3.0:
        raise InvalidInputError(f"epsilon must lie in (0, 2/3), got {eps!r}")


def c_branches(eps: float, Lambda: float, lam: float):
    _check_eps(eps)
    if not (Lambda > 0 and lam > 0):
        raise InvalidInputError("curvatures must be positive")
    first = Lambda * lam / (Lambda + lam)
    den = (9.0 * math.sqrt(Lambda**3) + 2.0 * math.sqrt(lam**3) * (math.cosh(eps) - 1.0)) ** 2
    den += 4.0 * eps * eps * lam**3
    second = 8.0 * eps * math.sqrt(lam**5 * Lambda**3) / den
    return first, second


def c_constant(eps: float, Lambda: float, lam: float) -> float:
    """Upper bound on the umbilicity constant in the pinching theorem."""
    return min(c_branches(eps, Lambda, lam))


def _catenoid_data(Lambda, lam, omega, m0, h_star):
    r_gamma, r_upper = graph_lemma_radius(Lambda, lam)
    r1 = catenoid.radius_at_height(m0, r_gamma, h_star)
    target = 2.0 * omega + r1 - r_gamma
    s0 = s0_solve(omega, target)
    return {
        "r_gamma": r_gamma,
        "r_gamma_upper": r_upper,
        "h_star": h_star,
        "r1": r1,
        "R1": omega + r1 - r_gamma,
        "target": target,
        "s0": s0,
    }


def _require_cmc(W):
    if not W.is_cmc or W.beta is None or not W.beta > W.alpha:
        raise NotCMCTypeError(f"class is {W.type_tag.value}; a cylinder curvature beta > alpha is required")


def theorem1_inequalities(d, alpha, beta, lam, h_star, s0):
    """The four source inequalities at ratio ``d``, in their original form."""
    out = [Condition("case1", d / alpha - (1.0 / lam + d / beta))]
    out.append(Condition("1b", 2.0 * h_star / (4.0 / lam**2 + h_star**2) - alpha / d))
    if d > 0.5 * alpha * h_star:
        out.append(Condition("2b", r_d_value(d, alpha, h_star) - s0, strict=False))
    else:
        out.append(Condition("2b", -math.inf, strict=False))
    out.append(Condition("4", d - 1.5 * beta * h_star))
    return out


def theorem1_threshold(
    Lambda: float,
    lam: float,
    omega: float,
    W: WeingartenClass,
    m0: float,
    assumption1: Optional[GridCheck] = None,
    horizon: Optional[float] = None,
    d: Optional[float] = None,
) -> CertificationReport:
    """Homothety threshold ``d0`` for a CMC-type class satisfying the line bound.

    The line bound ``g(t) >= (1 - m0) alpha + m0 t`` must be certified,
    either by passing ``assumption1`` or a ``horizon`` to check it on.
    With ``d`` given, the four inequalities are also evaluated at ``d``.
    """
    _require_cmc(W)
    if assumption1 is None:
        if horizon is None:
            raise MissingHypothesisError("certification of the line bound on g is required")
        assumption1 = check_assumption1(W, m0, horizon)
    alpha, beta = W.alpha, W.beta
    flags = []
    if Lambda == lam:
        flags.append("circle: the boundary is a circle and the result is elementary")
    if math.isfinite(W.b):
        flags.append("finite domain end b: the theorem assumes g defined on [alpha, inf)")
    if assumption1.clamped:
        flags.append("line-bound horizon clamped to the domain end b")

    h_star = graph_lemma_radius(Lambda, lam).r_lower * catenoid.hstar(m0)
    data = _catenoid_data(Lambda, lam, omega, m0, h_star)
    s0 = data["s0"]
    thresholds = {
        "dA": alpha * beta / (lam * (beta - alpha)),
        "dB": alpha * (4.0 / lam**2 + h_star**2) / (2.0 * h_star),
        "dC": alpha * (s0**2 + h_star**2) / (2.0 * h_star),
        "dD": 1.5 * beta * h_star,
    }
    d0 = max(thresholds.values())
    binding = max(thresholds, key=thresholds.get)
    data["binding"] = binding
    data["hstar_normalized"] = catenoid.hstar(m0)

    conditions = [Condition("assumption1", assumption1.min_margin, strict=False)]
    if assumption1.min_margin < 0 and assumption1.holds:
        # rounding-level deficit accepted by the checker
        conditions[0] = Condition("assumption1", 0.0, strict=False)
    if d is not None:
        if not d > 0:
            raise InvalidInputError(f"d must be positive, got {d!r}")
        conditions.extend(theorem1_inequalities(d, alpha, beta, lam, h_star, s0))

    inputs = {
        "Lambda": Lambda,
        "lambda": lam,
        "omega": omega,
        "alpha": alpha,
        "beta": beta,
        "m0": m0,
        "horizon": assumption1.verified_up_to,
        "g": W.source,
    }
    if d is not None:
        inputs["d"] = d
    return CertificationReport(
        mode="theorem1",
        inputs=inputs,
        intermediates=data,
        conditions=conditions,
        d0=d0,
        thresholds=thresholds,
        flags=flags,
    )


def theorem2_check(
    Lambda: float,
    lam: float,
    eps: float,
    alpha: float,
    beta: float,
    omega: Optional[float] = None,
) -> CertificationReport:
    """Pinching conditions on ``alpha`` and ``beta`` for boundary curvatures ``Lambda``, ``lam``.

    Condition 1: ``sqrt(Lambda^3/lam) < beta < (2/(3 eps)) sqrt(Lambda^3/lam)``.
    Condition 2: ``alpha <= C(eps, Lambda, lam)``.

    The formulas are applied exactly as written; ``Lambda < lam`` is accepted
    and flagged. When ``omega`` is supplied the bisection value of ``s0`` is
    reported next to the explicit one.
    """
    _check_eps(eps)
    for name, v in (("Lambda", Lambda), ("lambda", lam), ("alpha", alpha), ("beta", beta)):
        if not v > 0:
            raise InvalidInputError(f"{name} must be positive, got {v!r}")
    flags = []
    if Lambda < lam:
        flags.append(
            "curvature order: Lambda < lambda; formulas applied to the inputs as given"
        )
    base = math.sqrt(Lambda**3 / lam)
    lower, upper = base, 2.0 / (3.0 * eps) * base
    first, second = c_branches(eps, Lambda, lam)
    C = min(first, second)
    r_gamma = math.sqrt(lam / Lambda**3)
    h_star = eps * r_gamma
    r1 = r_gamma * math.cosh(eps)
    inter = {
        "beta_lower": lower,
        "beta_upper": upper,
        "C_value": C,
        "C_first": first,
        "C_second": second,
        "r_gamma": r_gamma,
        "h_star": h_star,
        "r1": r1,
        "s0_analytic": s0_theorem2(lam, r_gamma, eps),
        "m0": -1.0,
    }
    if omega is not None:
        target = 2.0 * omega + r1 - r_gamma
        inter["target"] = target
        inter["R1"] = omega + r1 - r_gamma
        inter["s0"] = s0_solve(omega, target)
    conditions = [
        Condition("1_lower", beta - lower),
        Condition("1_upper", upper - beta),
        Condition("2", C - alpha, strict=False),
    ]
    inputs = {"Lambda": Lambda, "lambda": lam, "epsilon": eps, "alpha": alpha, "beta": beta}
    if omega is not None:
        inputs["omega"] = omega
    return CertificationReport("theorem2", inputs, inter, conditions, flags=flags)


def general_conditions_check(
    Lambda: float,
    lam: float,
    omega: float,
    m0: float,
    h_star: float,
    W: WeingartenClass,
) -> CertificationReport:
    """Conditions A-E at ``d = 1`` for slope ``m0`` and truncation height ``h_star``.

    Condition C is required in the form ``alpha < 2h*/(s0^2 + h*^2)``; the
    ``4/s0^2`` form is evaluated alongside as an informational row. F and G
    are informational as well.
    """
    _require_cmc(W)
    if not m0 < 0:
        raise InvalidInputError(f"m0 must be negative, got {m0!r}")
    if not h_star > 0:
        raise InvalidInputError(f"h_star must be positive, got {h_star!r}")
    r_gamma = graph_lemma_radius(Lambda, lam).r_lower
    if m0 < -1.0 and not h_star < r_gamma * catenoid.total_height(m0):
        raise UnreachableHeightError(
            f"h_star={h_star!r} violates the compatibility bound r(Gamma) * H(m0) = "
            f"{r_gamma * catenoid.total_height(m0)!r}"
        )
    alpha, beta = W.alpha, W.beta
    data = _catenoid_data(Lambda, lam, omega, m0, h_star)
    s0 = data["s0"]
    flags = []
    e_check = check_condition_E(W, m0, r_gamma)
    if e_check.clamped:
        flags.append("condition E interval clamped to the domain end b")
    data["E_verified_up_to"] = e_check.verified_up_to

    conditions = [
        Condition("A", 1.0 / alpha - (1.0 / lam + 1.0 / beta)),
        Condition("B", 2.0 * h_star / (4.0 / lam**2 + h_star**2) - alpha),
        Condition("C", 2.0 * h_star / (s0**2 + h_star**2) - alpha),
        Condition("C_as_printed", 2.0 * h_star / (4.0 / s0**2 + h_star**2) - alpha, informational=True),
        Condition("D", 2.0 / 3.0 - beta * h_star),
        Condition("E", e_check.min_margin),
        Condition("F", min(1.0 / beta - 1.5 * h_star, r_gamma - 1.0 / beta), informational=True),
        Condition(
            "G",
            1.0 / alpha - max(1.0 / lam + 1.0 / Lambda, (s0**2 + h_star**2) / (2.0 * h_star)),
            informational=True,
        ),
    ]
    inputs = {
        "Lambda": Lambda,
        "lambda": lam,
        "omega": omega,
        "alpha": alpha,
        "beta": beta,
        "m0": m0,
        "h_star": h_star,
        "g": W.source,
    }
    return CertificationReport("general", inputs, data, conditions, flags=flags)

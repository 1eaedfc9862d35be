"""Nonclassicality criteria and the Mandel-parameter phase transition.

Three criteria are implemented side by side and never merged:

* squeezing, Var(x_lam) < 1/2;
* existence of a regular coherent-state quasiprobability, which fails (the
  field is nonclassical) exactly when (2 nbar + 1) e^{-2(u+r)} < 1;
* the sign of the Mandel parameter, which unlike the first two depends on the
  displacement magnitude.

A negative Mandel parameter is sufficient but not necessary for field
nonclassicality, so a classically behaved Mandel curve coexists happily with
a nonclassical field.  The critical displacement solver locates the magnitude
at which the minimum over time of the Mandel parameter first touches zero.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .statistics import mandel_q_curve, mandel_q_zero, quad_variance

# |Q| below this at the curve minimum counts as a tangency; the figure-level
# rounding of critical displacements shifts the minimum by about 1e-4.
TANGENCY_ATOL = 1e-4

# Minimizer closer to u = 0 than this is reported as the boundary mechanism.
BOUNDARY_U_TOL = 1e-6


class NoTransitionError(RuntimeError):
    """Raised when no critical displacement exists in the search range."""


class BehaviorKind(enum.Enum):
    STRICTLY_CLASSICAL = "strictly_classical"
    TANGENT_CRITICAL = "tangent_critical"
    MIXED_TWO_CROSSINGS = "mixed_two_crossings"
    NEGATIVE_START_ONE_CROSSING = "negative_start_one_crossing"


class Mechanism(enum.Enum):
    INTERIOR_TANGENCY = "interior_tangency"
    BOUNDARY_Q0_ZERO = "boundary_q0_zero"


class Q0Sign(enum.Enum):
    POSITIVE = "positive"
    ZERO = "zero"
    NEGATIVE = "negative"


@dataclass(frozen=True)
class Classification:
    """Temporal behavior of the Mandel parameter on [0, u_max]."""

    kind: BehaviorKind
    zeros: tuple[float, ...]


@dataclass(frozen=True)
class CriticalPointResult:
    """Critical displacement magnitude and the mechanism that produced it."""

    alpha_c: float
    tangency_u: Optional[float]
    mechanism: Mechanism


def classicality_factor(nbar: float, r: float, u: float) -> float:
    """(2 nbar + 1) e^{-2(u + r)}; >= 1 iff a regular P density exists."""
    return (2.0 * nbar + 1.0) * math.exp(-2.0 * (u + r))


def p_representation_exists(nbar: float, r: float, u: float) -> bool:
    """True iff the coherent-state quasiprobability is a regular density."""
    if u < 0:
        raise ValueError("u must be >= 0")
    return classicality_factor(nbar, r, u) >= 1.0


def field_nonclassical(nbar: float, r: float, u: float) -> bool:
    """Negation of ``p_representation_exists``; monotone nondecreasing in u."""
    return not p_representation_exists(nbar, r, u)


def squeezing_criterion(nbar: float, r: float, theta: float, lam: float,
                        u: float) -> bool:
    """True iff Var(x_lam) < 1/2, i.e. narrower than a coherent state.

    At the aligned angle theta = 2 lam this is exactly equivalent to
    ``field_nonclassical``.
    """
    if u < 0:
        raise ValueError("u must be >= 0")
    return quad_variance(nbar, r, theta, lam, u) < 0.5


def crossover_time(nbar: float, r: float) -> Optional[float]:
    """Time u* = (1/2) ln[(2 nbar + 1) e^{-2r}] past which the field is
    nonclassical, or None when it is nonclassical already at u = 0."""
    factor = classicality_factor(nbar, r, 0.0)
    if factor < 1.0:
        return None
    return 0.5 * math.log(factor)


def q0_sign(nbar: float, r: float, alpha_mag: float, *,
            atol: float = 1e-5) -> Q0Sign:
    """Sign of the Mandel parameter at u = 0 (aligned convention).

    Whenever (2 nbar + 1) e^{-2r} >= 1 the sign is positive for every
    displacement magnitude; values within ``atol`` of zero report ZERO.
    """
    q0 = mandel_q_zero(nbar, r, alpha_mag)
    if abs(q0) <= atol:
        return Q0Sign.ZERO
    return Q0Sign.POSITIVE if q0 > 0 else Q0Sign.NEGATIVE


def _refine_zero(q_of: Callable[[float], float], lo: float, hi: float) -> float:
    root = brentq(q_of, lo, hi, xtol=1e-15, rtol=8.9e-16, maxiter=200)
    return float(root)


def _min_q(q_of: Callable[[float], float], us: np.ndarray,
           qs: np.ndarray) -> tuple[float, float]:
    """Global minimum of the Mandel curve: grid argmin plus local refinement."""
    i = int(np.argmin(qs))
    lo = us[max(i - 1, 0)]
    hi = us[min(i + 1, len(us) - 1)]
    if lo == hi:
        return float(qs[i]), float(us[i])
    res = minimize_scalar(q_of, bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-12})
    if res.fun <= qs[i]:
        return float(res.fun), float(res.x)
    return float(qs[i]), float(us[i])


def classify_behavior(nbar: float, r: float, alpha_mag: float,
                      u_max: float = 10.0, *, grid: int = 2048,
                      tangency_atol: float = TANGENCY_ATOL) -> Classification:
    """Classify the Mandel curve on [0, u_max] and locate its zeros.

    Sign changes are bracketed on a uniform grid and refined by root
    bracketing; a strictly interior dip narrower than the grid is caught by
    refining the curve minimum.  A minimum within ``tangency_atol`` of zero
    (with no sign change) is reported as the tangent-critical behavior.
    """
    if u_max <= 0:
        raise ValueError("u_max must be > 0")
    if r <= 0:
        raise ValueError("classification requires squeeze_mag r > 0")
    mandel_q_zero(nbar, r, alpha_mag)  # vacuum guard

    def q_of(u: float) -> float:
        return float(mandel_q_curve(nbar, r, alpha_mag, u))

    us = np.linspace(0.0, u_max, grid)
    qs = mandel_q_curve(nbar, r, alpha_mag, us)
    q0 = float(qs[0])
    min_q, argmin_u = _min_q(q_of, us, qs)

    if q0 < -tangency_atol:
        zeros = [
            _refine_zero(q_of, us[i], us[i + 1])
            for i in np.flatnonzero(np.signbit(qs[:-1]) != np.signbit(qs[1:]))
        ]
        if len(zeros) != 1:
            warnings.warn(f"negative start with {len(zeros)} crossings on "
                          f"[0, {u_max}]; outside the expected taxonomy")
        return Classification(kind=BehaviorKind.NEGATIVE_START_ONE_CROSSING,
                              zeros=tuple(zeros))

    if min_q > tangency_atol:
        return Classification(kind=BehaviorKind.STRICTLY_CLASSICAL, zeros=())

    if min_q >= -tangency_atol:
        # the minimum sits within the tolerance band around zero: a tangency,
        # at the boundary when the start itself is the minimum
        zero = 0.0 if abs(q0) <= tangency_atol else argmin_u
        return Classification(kind=BehaviorKind.TANGENT_CRITICAL,
                              zeros=(zero,))

    zeros = [
        _refine_zero(q_of, us[i], us[i + 1])
        for i in np.flatnonzero(np.signbit(qs[:-1]) != np.signbit(qs[1:]))
    ]
    if not zeros:
        # dip narrower than the grid: bracket both crossings around it
        half_grid = (us[1] - us[0]) / 2.0
        left = argmin_u
        while left > 0 and q_of(left) < 0:
            left = max(left - half_grid, 0.0)
        right = argmin_u
        while right < u_max and q_of(right) < 0:
            right = min(right + half_grid, u_max)
        zeros = [left if q_of(left) < 0 else _refine_zero(q_of, left, argmin_u),
                 _refine_zero(q_of, argmin_u, right)]
    if len(zeros) > 2:
        warnings.warn(f"{len(zeros)} zeros found; outside the expected "
                      "taxonomy of at most two crossings")
    return Classification(kind=BehaviorKind.MIXED_TWO_CROSSINGS,
                          zeros=tuple(sorted(zeros)))


def _curve_minimum(nbar: float, r: float, alpha_mag: float, u_max: float,
                   scan_points: int) -> tuple[float, float]:
    us = np.linspace(0.0, u_max, scan_points)
    qs = mandel_q_curve(nbar, r, alpha_mag, us)

    def q_of(u: float) -> float:
        return float(mandel_q_curve(nbar, r, alpha_mag, u))

    return _min_q(q_of, us, qs)


def find_critical_alpha(nbar: float, r: float, *, u_max: float = 10.0,
                        alpha_tol: float = 1e-9, scan_points: int = 512,
                        alpha_cap: float = 1e3) -> CriticalPointResult:
    """Smallest displacement magnitude at which min_u Q_M(u) reaches zero.

    The scalar map m(|alpha|) = min over u of the Mandel parameter is assumed
    strictly decreasing across the bracket; the bracket signs are verified
    explicitly and a violation raises rather than returning a bogus root.
    The upper bracket grows by doubling and failing to find m < 0 below
    ``alpha_cap`` raises ``NoTransitionError``.  A minimizer within 1e-6 of
    u = 0 is reported as the boundary mechanism (the zero of the Mandel
    parameter at u = 0), otherwise as an interior tangency.
    """
    if r <= 0:
        raise ValueError("find_critical_alpha requires r > 0; the r = 0 "
                         "combined-limit dynamics is not covered")

    def min_of(alpha_mag: float) -> tuple[float, float]:
        return _curve_minimum(nbar, r, alpha_mag, u_max, scan_points)

    lo = 0.0
    m_lo, _ = min_of(lo)
    if m_lo < 0:
        raise RuntimeError(
            f"min Q at alpha = 0 is negative ({m_lo:.3e}); the assumed "
            "monotone bracket does not apply")
    hi = 0.25
    m_hi, _ = min_of(hi)
    while m_hi > 0:
        hi *= 2.0
        if hi > alpha_cap:
            raise NoTransitionError(
                f"min Q stays positive for all |alpha| <= {alpha_cap}")
        m_hi, _ = min_of(hi)

    while hi - lo > alpha_tol:
        mid = 0.5 * (lo + hi)
        m_mid, _ = min_of(mid)
        if m_mid > 0:
            lo = mid
        else:
            hi = mid
    alpha_c = 0.5 * (lo + hi)
    _, u_star = min_of(alpha_c)
    if u_star <= BOUNDARY_U_TOL:
        return CriticalPointResult(alpha_c=alpha_c, tangency_u=None,
                                   mechanism=Mechanism.BOUNDARY_Q0_ZERO)
    return CriticalPointResult(alpha_c=alpha_c, tangency_u=u_star,
                               mechanism=Mechanism.INTERIOR_TANGENCY)


def critical_alpha_q0_root(nbar: float, r: float) -> float:
    """Closed-form cross-check for the boundary mechanism: the positive root
    of the u = 0 Mandel parameter as a function of |alpha|.

    Exists only when (2 nbar + 1) e^{-2r} < 1.
    """
    slope = 1.0 - (2.0 * nbar + 1.0) * math.exp(-2.0 * r)
    if slope <= 0:
        raise ValueError("the u = 0 Mandel parameter has no root: it is "
                         "positive for every displacement")
    const = ((nbar + 0.5) ** 2 * math.cosh(4.0 * r)
             - (nbar + 0.5) * math.cosh(2.0 * r) + 0.25)
    return math.sqrt(const / slope)

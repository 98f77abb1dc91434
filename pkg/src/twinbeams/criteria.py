"""The five-level ladder of quantum-correlation criteria.

Level 1  gemellity G < 1          -- no classical-field description
Level 2  conditional variance V < 1 -- QND-grade correlation
Level 3  separability S12 < 2     -- entangled (non-separable) state
Level 4  V+ * V- < 1              -- EPR correlation by inference
Level 5  Bell                     -- never reachable with Gaussian states

Levels 1-2 need a single quadrature pair; levels 3-4 need moments on
both conjugate quadratures.  All inequalities are strict: a state
sitting exactly on a boundary (e.g. vacuum) does NOT satisfy the level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

from scipy.optimize import minimize_scalar

from .moments import DuanEprMoments, MomentPair
from .states import GaussianTwoModeState, quadrature_moments

ORACLE_XTOL = 1e-11

LEVEL5_NOTE = "not evaluable for Gaussian states (positive Wigner function)"

LEVEL_STATEMENTS = {
    1: "twin beams: the correlation admits no description in terms of "
       "classical fluctuating fields",
    2: "QND correlation: measuring one beam yields a quantum non-demolition "
       "readout of the other",
    3: "inseparable beams: the joint state cannot be written as a mixture of "
       "factorizable states",
    4: "EPR beams: cross-beam inference produces an apparent violation of "
       "the Heisenberg inequality",
    5: "Bell level: " + LEVEL5_NOTE,
}


class GemellityResult(NamedTuple):
    value: float
    theta: float


class ConditionalVarianceResult(NamedTuple):
    value: float
    gain: float


# ---------------------------------------------------------------------------
# classical reference correlations


def classical_split_correlation(f_in: float) -> float:
    """Correlation of the two outputs of a 50/50 split of a classical
    beam with Fano factor f_in: (f_in - 1) / (f_in + 1)."""
    if f_in < 1.0:
        raise ValueError(f"input Fano factor must be >= 1, got {f_in}")
    return (f_in - 1.0) / (f_in + 1.0)


def classical_unbalanced_correlation(f1: float, f2: float) -> float:
    """Largest correlation reachable classically between beams of Fano
    factors f1, f2: sqrt((1 - 1/f1)(1 - 1/f2))."""
    if f1 < 1.0 or f2 < 1.0:
        raise ValueError(f"Fano factors must be >= 1, got ({f1}, {f2})")
    return math.sqrt((1.0 - 1.0 / f1) * (1.0 - 1.0 / f2))


# ---------------------------------------------------------------------------
# level 1: gemellity


def gemellity(m: MomentPair) -> GemellityResult:
    """Minimum shot-normalized noise of cos(t) dX1 - sin(t) dX2 over the
    recombination angle t, with the minimizing angle.

    Closed form: (F1+F2)/2 - sqrt(C^2 F1 F2 + ((F1-F2)/2)^2).
    """
    a = 0.5 * (m.f1 - m.f2)
    b = m.covariance
    value = 0.5 * (m.f1 + m.f2) - math.hypot(a, b)
    theta = 0.5 * (math.pi - math.atan2(b, a))
    return GemellityResult(value=max(value, 0.0), theta=theta)


def _recombination_variance(m: MomentPair, theta: float) -> float:
    c, s = math.cos(theta), math.sin(theta)
    return c * c * m.f1 + s * s * m.f2 - 2.0 * c * s * m.covariance


def gemellity_operational(m: MomentPair, grid_size: int = 181) -> float:
    """Gemellity by direct minimization of the recombined-beam variance:
    coarse angular grid then bounded refinement.  Agrees with the closed
    form to better than 1e-9."""
    if grid_size < 3:
        raise ValueError("grid_size must be >= 3")
    thetas = [k * math.pi / grid_size for k in range(grid_size)]
    best = min(thetas, key=lambda t: _recombination_variance(m, t))
    h = math.pi / grid_size
    res = minimize_scalar(
        lambda t: _recombination_variance(m, t),
        bounds=(best - h, best + h),
        method="bounded",
        options={"xatol": ORACLE_XTOL},
    )
    return float(min(res.fun, _recombination_variance(m, best)))


# ---------------------------------------------------------------------------
# level 2: conditional variance


def conditional_variance(f_a: float, f_b: float, c: float) -> ConditionalVarianceResult:
    """Residual variance of beam a after optimal linear inference from
    beam b: F_a (1 - C^2), reached at gain g = C sqrt(F_a F_b) / F_b."""
    if f_a <= 0.0 or f_b <= 0.0:
        raise ValueError("variances must be positive")
    if abs(c) > 1.0:
        raise ValueError("correlation must lie in [-1, 1]")
    value = f_a * (1.0 - c * c)
    gain = c * math.sqrt(f_a * f_b) / f_b
    return ConditionalVarianceResult(value=value, gain=gain)


def _gain_variance(f_a: float, f_b: float, cov: float, g: float) -> float:
    return f_a - 2.0 * g * cov + g * g * f_b


def conditional_variance_operational(m: MomentPair, direction: int) -> float:
    """Conditional variance by scanning the gain of X_a - g X_b and
    keeping the minimum; matches the closed form to better than 1e-9."""
    if direction == 1:
        f_a, f_b = m.f1, m.f2
    elif direction == 2:
        f_a, f_b = m.f2, m.f1
    else:
        raise ValueError(f"direction must be 1 or 2, got {direction}")
    bound = 2.0 * math.sqrt(f_a / f_b) + 1.0
    res = minimize_scalar(
        lambda g: _gain_variance(f_a, f_b, m.covariance, g),
        bounds=(-bound, bound),
        method="bounded",
        options={"xatol": ORACLE_XTOL},
    )
    return float(res.fun)


# ---------------------------------------------------------------------------
# levels 3-4: separability and EPR


def duan_separability(dm: DuanEprMoments) -> float:
    """S12 = Var(X+_1 - X+_2)/2 + Var(X-_1 + X-_2)/2.

    Uses the fixed balanced 50/50 combinations, not the minimized
    gemellity; S12 < 2 certifies a non-separable Gaussian state.
    """
    g_plus = 0.5 * (dm.plus.f1 + dm.plus.f2) - dm.plus.covariance
    g_minus = 0.5 * (dm.minus.f1 + dm.minus.f2) + dm.minus.covariance
    return g_plus + g_minus


def epr_product(dm: DuanEprMoments, direction: int) -> float:
    """Product of the two conditional variances inferring one beam's
    conjugate quadratures from the other; < 1 certifies EPR beams."""
    if direction == 1:
        v_plus = conditional_variance(dm.plus.f1, dm.plus.f2, dm.plus.c12).value
        v_minus = conditional_variance(dm.minus.f1, dm.minus.f2, dm.minus.c12).value
    elif direction == 2:
        v_plus = conditional_variance(dm.plus.f2, dm.plus.f1, dm.plus.c12).value
        v_minus = conditional_variance(dm.minus.f2, dm.minus.f1, dm.minus.c12).value
    else:
        raise ValueError(f"direction must be 1 or 2, got {direction}")
    return v_plus * v_minus


def epr_correlation_diagnostic(dm: DuanEprMoments, direction: int = 1) -> bool:
    """Consistency check of the correlation form of the EPR criterion:
    (1 - C+^2)(1 - C-^2) < 1 / (F+ F-) with the inferred beam's
    variances.  Equivalent to epr_product < 1 by construction."""
    if direction == 1:
        f_plus, f_minus = dm.plus.f1, dm.minus.f1
    else:
        f_plus, f_minus = dm.plus.f2, dm.minus.f2
    lhs = (1.0 - dm.plus.c12 ** 2) * (1.0 - dm.minus.c12 ** 2)
    return lhs < 1.0 / (f_plus * f_minus)


# ---------------------------------------------------------------------------
# the full report


@dataclass(frozen=True)
class CriteriaReport:
    """All criterion values for one state, with per-level verdicts."""

    g: float
    v12: float
    v21: float
    s12: float
    epr12: float
    epr21: float
    level1: bool
    level2: bool
    level3: bool
    level4: bool
    level5_note: str
    optimal_theta: float
    optimal_g12: float
    optimal_g21: float
    duan_note: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "gemellity": self.g,
            "conditional_variance_12": self.v12,
            "conditional_variance_21": self.v21,
            "separability": self.s12,
            "epr_product_12": self.epr12,
            "epr_product_21": self.epr21,
            "level1": self.level1,
            "level2": self.level2,
            "level3": self.level3,
            "level4": self.level4,
            "level5_note": self.level5_note,
            "optimal_theta": self.optimal_theta,
            "optimal_gain_12": self.optimal_g12,
            "optimal_gain_21": self.optimal_g21,
            "duan_note": self.duan_note,
        }


def report_scalars(dm: DuanEprMoments) -> dict:
    """Criterion values as a flat dict; shared by the analytic and the
    sample-estimate paths so both use identical closed forms."""
    gem = gemellity(dm.plus)
    v12 = conditional_variance(dm.plus.f1, dm.plus.f2, dm.plus.c12)
    v21 = conditional_variance(dm.plus.f2, dm.plus.f1, dm.plus.c12)
    return {
        "gemellity": gem.value,
        "conditional_variance_12": v12.value,
        "conditional_variance_21": v21.value,
        "separability": duan_separability(dm),
        "epr_product_12": epr_product(dm, 1),
        "epr_product_21": epr_product(dm, 2),
        "optimal_theta": gem.theta,
        "optimal_gain_12": v12.gain,
        "optimal_gain_21": v21.gain,
    }


def report_from_moments(dm: DuanEprMoments) -> CriteriaReport:
    scalars = report_scalars(dm)
    g_plus = 0.5 * (dm.plus.f1 + dm.plus.f2) - dm.plus.covariance
    g_minus = 0.5 * (dm.minus.f1 + dm.minus.f2) + dm.minus.covariance
    note = None
    slack = 1e-12
    if (gemellity(dm.plus).value < g_plus - slack
            or gemellity(dm.minus).value < g_minus - slack):
        note = ("the minimized gemellities are lower than the fixed 50/50 "
                "combinations entering S12")
    return CriteriaReport(
        g=scalars["gemellity"],
        v12=scalars["conditional_variance_12"],
        v21=scalars["conditional_variance_21"],
        s12=scalars["separability"],
        epr12=scalars["epr_product_12"],
        epr21=scalars["epr_product_21"],
        level1=scalars["gemellity"] < 1.0,
        level2=(scalars["conditional_variance_12"] < 1.0
                or scalars["conditional_variance_21"] < 1.0),
        level3=scalars["separability"] < 2.0,
        level4=(scalars["epr_product_12"] < 1.0
                or scalars["epr_product_21"] < 1.0),
        level5_note=LEVEL5_NOTE,
        optimal_theta=scalars["optimal_theta"],
        optimal_g12=scalars["optimal_gain_12"],
        optimal_g21=scalars["optimal_gain_21"],
        duan_note=note,
    )


def state_moments(state: GaussianTwoModeState,
                  theta_plus: float = 0.0,
                  theta_minus: float = math.pi / 2) -> DuanEprMoments:
    """Moments of the conjugate quadrature pair selected by the two
    measurement angles (same angle on both modes per pair)."""
    return DuanEprMoments(
        plus=quadrature_moments(state, theta_plus, theta_plus),
        minus=quadrature_moments(state, theta_minus, theta_minus),
    )


def classify(state: GaussianTwoModeState,
             theta_plus: float = 0.0,
             theta_minus: float = math.pi / 2) -> CriteriaReport:
    """Evaluate all five levels on a state.  Levels 1-2 use the `plus`
    quadrature pair; levels 3-4 use both conjugate pairs."""
    return report_from_moments(state_moments(state, theta_plus, theta_minus))

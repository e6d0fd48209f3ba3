"""
Drift evaluators for the population, the energy and the seminorm.

The energy drift is split as

    Dh(ζ) = −c₁‖ζ‖ + c₂ − Aₐ R(ζ),
    R(η)  = a(1 − k_r(η)) + 2 Σ_y η(y)(g(y,η) − a²/ℓ) ≥ 0,

so the quadratic bound is exact and only the nonnegative remainder Aₐ R is estimated.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from spatialpoll.errors import CircumferenceMismatchError, InvalidParameterError
from spatialpoll.geometry.circle import union_balls_measure
from spatialpoll.kernels.functionals import SeminormFunctional
from spatialpoll.kernels.operators import (
    DEFAULT_INNER_SAMPLES,
    DEFAULT_TOLERANCE,
    Estimate,
    SeedLike,
    arrival_average,
    drift,
)
from spatialpoll.kernels.params import SystemParams
from spatialpoll.kernels.scan_rows import ScanRows
from spatialpoll.lyapunov.drift_constants import drift_constants
from spatialpoll.lyapunov.energy import EnergyParams
from spatialpoll.measures.configurations import Configuration

logger = logging.getLogger(__name__)

# Remainders below this are round-off, anything lower breaks the interpolation inequality
SLACK_TOLERANCE = 1e-10


@dataclass(frozen=True)
class DriftEvaluation:
    """Dh(ζ) = bound − slack, with the standard error of the sampled part of the slack."""

    value: float
    stderr: float
    bound: float
    slack: float

    @property
    def respects_bound(self) -> bool:
        return self.value <= self.bound + SLACK_TOLERANCE


def _check_energy_params(params: SystemParams, p: EnergyParams) -> None:
    if p.circumference != params.circumference:
        raise CircumferenceMismatchError(
            f"Kernel on circumference {p.circumference}, system on {params.circumference}"
        )
    if not p.permits_scan_radius(params.scan_radius):
        raise InvalidParameterError(
            f"Kernel width a={p.a} exceeds min(ℓ/2, 2r) for r={params.scan_radius}"
        )


def energy_drift(
    zeta: Configuration,
    params: SystemParams,
    p: EnergyParams,
    tol: float = DEFAULT_TOLERANCE,
    inner_samples: int = DEFAULT_INNER_SAMPLES,
    seed: SeedLike = None,
) -> DriftEvaluation:
    """
    Dh(ζ) for h = ⟨·,·⟩ₐ, requiring 0 < a ≤ min(ℓ/2, 2r).

    Args:
        zeta: Configuration the drift is evaluated at
        params: System parameters
        p: Energy kernel parameters
        tol: Target standard error of the arrival average
        inner_samples: Batches drawn per round of the arrival average
        seed: Seed of the arrival batches

    Returns:
        DriftEvaluation with value = bound − slack, where slack is the poll remainder

    Raises:
        InvalidParameterError: If a is outside (0, min(ℓ/2, 2r)]
        ArithmeticError: If a poll remainder is negative
    """
    _check_energy_params(params, p)
    g = params.distribution
    constants = drift_constants(params.arrival_rate, g.s1, g.s2, p)

    def slack(base: Configuration, batches: np.ndarray) -> np.ndarray:
        values = ScanRows.build(base, batches, params.scan_radius).energy_slack(p)
        lowest = float(values.min())
        if lowest < -SLACK_TOLERANCE:
            raise ArithmeticError(
                f"Negative poll remainder {lowest}: interpolation inequality broken"
            )
        return values

    remainder = arrival_average(zeta, params, slack, tol, inner_samples, seed)
    bound = constants.bound(zeta.total_variation)
    logger.debug(
        f"Energy drift at ‖ζ‖={zeta.total_variation}: bound {bound:.6g}, "
        f"remainder {remainder.value:.6g} ± {remainder.stderr:.2g}"
    )
    return DriftEvaluation(
        value=bound - remainder.value,
        stderr=remainder.stderr,
        bound=bound,
        slack=remainder.value,
    )


def population_drift(
    zeta: Configuration,
    params: SystemParams,
    tol: float = DEFAULT_TOLERANCE,
    inner_samples: int = DEFAULT_INNER_SAMPLES,
    seed: SeedLike = None,
) -> Estimate:
    """
    D‖·‖(ζ) = λs₁ − Aₐk_r(ζ)

    Returns:
        Estimate of the drift with the standard error of its arrival average
    """

    def coverage(base: Configuration, batches: np.ndarray) -> np.ndarray:
        return ScanRows.build(base, batches, params.scan_radius).coverage

    scanned = arrival_average(zeta, params, coverage, tol, inner_samples, seed)
    return Estimate(params.load - scanned.value, scanned.stderr)


def population_drift_lower_bound(zeta: Configuration, params: SystemParams) -> float:
    """λs₁ − 1 + G_λ(0)(1 − k_r(ζ)), using k_r ≤ 1 for every nonempty batch."""
    k = union_balls_measure(zeta, params.scan_radius)
    return params.load - 1.0 + params.empty_batch_probability * (1.0 - k)


def seminorm_drift(
    zeta: Configuration,
    params: SystemParams,
    p: EnergyParams,
    tol: float = DEFAULT_TOLERANCE,
    inner_samples: int = DEFAULT_INNER_SAMPLES,
    seed: SeedLike = None,
) -> Estimate:
    """D‖·‖ₐ(ζ) with exact poll enumeration."""
    _check_energy_params(params, p)
    return drift(SeminormFunctional(p), zeta, params, tol, inner_samples, seed)

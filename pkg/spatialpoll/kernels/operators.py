"""
The arrival operator Aₐ and the one-step operator A = Aₐ∘Aₚ.

    Aₐf(ζ) = Σ_{n≥0} G_λ(n) E f(ζ + δ_{X₁} + ... + δ_{Xₙ}),   X_i uniform on the circle

The series is cut at the first N leaving less than `tol` of G_λ mass. The n = 0 term is exact;
for n ≥ 1 the inner expectation is closed form where known and otherwise averaged over
`inner_samples` uniform batches, with the standard error reported.
"""

from __future__ import annotations

import logging
import math
from typing import Callable, NamedTuple, Union

import numpy as np

from spatialpoll.errors import InvalidParameterError
from spatialpoll.kernels.functionals import ConstantFunctional, Functional, as_functional
from spatialpoll.kernels.params import SystemParams
from spatialpoll.measures.configurations import Configuration

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-10
DEFAULT_INNER_SAMPLES = 256

SeedLike = Union[None, int, np.random.SeedSequence, np.random.Generator]
RowValues = Callable[[Configuration, np.ndarray], np.ndarray]


class Estimate(NamedTuple):
    """A possibly sampled expectation and its standard error (0 when exact)."""

    value: float
    stderr: float

    def within(self, target: float, sigmas: float = 4.0, slack: float = 1e-9) -> bool:
        return abs(self.value - target) <= sigmas * self.stderr + slack


def arrival_average(
    zeta: Configuration,
    params: SystemParams,
    values: RowValues,
    tol: float = DEFAULT_TOLERANCE,
    inner_samples: int = DEFAULT_INNER_SAMPLES,
    seed: SeedLike = None,
) -> Estimate:
    """Σ_{n≤N} G_λ(n) E values(ζ, batch of n uniform points)."""
    if not tol > 0:
        raise InvalidParameterError(f"Truncation tolerance must be positive, got {tol}")
    if inner_samples < 2:
        raise InvalidParameterError(f"Need at least two inner samples, got {inner_samples}")
    rng = np.random.default_rng(seed)
    level = params.distribution.truncation_level(params.arrival_rate, tol)
    pmf = params.distribution.pmf_vector(params.arrival_rate, level)

    total = pmf[0] * float(values(zeta, np.empty((1, 0)))[0])
    variance = 0.0
    for n in range(1, level + 1):
        if pmf[n] == 0.0:
            continue
        batches = rng.uniform(0.0, params.circumference, (inner_samples, n))
        sample = values(zeta, batches)
        total += pmf[n] * float(sample.mean())
        variance += pmf[n] ** 2 * float(sample.var(ddof=1)) / inner_samples
    return Estimate(total, math.sqrt(variance))


def apply_arrival_operator(
    f,
    zeta: Configuration,
    params: SystemParams,
    tol: float = DEFAULT_TOLERANCE,
    inner_samples: int = DEFAULT_INNER_SAMPLES,
    seed: SeedLike = None,
) -> Estimate:
    """Aₐf(ζ)"""
    f = as_functional(f)
    closed = f.arrival_closed_form(zeta, params)
    if closed is not None:
        return Estimate(float(closed), 0.0)
    logger.debug(f"No closed form for Aₐ{f.name}, sampling inner expectations")
    return arrival_average(zeta, params, f.evaluate_added, tol, inner_samples, seed)


def one_step_expectation(
    f,
    zeta: Configuration,
    params: SystemParams,
    tol: float = DEFAULT_TOLERANCE,
    inner_samples: int = DEFAULT_INNER_SAMPLES,
    seed: SeedLike = None,
) -> Estimate:
    """Aₐ(Aₚf)(ζ): arrivals during the interpolling time, then one poll."""
    f = as_functional(f)
    if isinstance(f, ConstantFunctional):
        return Estimate(f.value, 0.0)

    def polled(base: Configuration, batches: np.ndarray) -> np.ndarray:
        return f.polled_added(base, batches, params)

    return arrival_average(zeta, params, polled, tol, inner_samples, seed)


def drift(
    f: Functional,
    zeta: Configuration,
    params: SystemParams,
    tol: float = DEFAULT_TOLERANCE,
    inner_samples: int = DEFAULT_INNER_SAMPLES,
    seed: SeedLike = None,
) -> Estimate:
    """Df(ζ) = Af(ζ) − f(ζ)"""
    f = as_functional(f)
    step = one_step_expectation(f, zeta, params, tol, inner_samples, seed)
    return Estimate(step.value - f(zeta), step.stderr)

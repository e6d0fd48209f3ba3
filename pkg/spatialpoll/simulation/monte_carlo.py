"""
Brute-force Monte Carlo of one-step quantities, used to cross-check the exact operators.
"""

from __future__ import annotations

import logging
import math

import numpy as np

from spatialpoll.errors import InvalidParameterError
from spatialpoll.kernels.arrivals import sample_batch_sizes
from spatialpoll.kernels.functionals import Functional, as_functional
from spatialpoll.kernels.operators import Estimate, SeedLike
from spatialpoll.kernels.params import SystemParams
from spatialpoll.kernels.polling import poll_index
from spatialpoll.measures.configurations import Configuration
from spatialpoll.simulation.paths import draw_stream

logger = logging.getLogger(__name__)

MIN_REPLICATIONS = 1000


def _check_reps(reps: int) -> None:
    if reps < MIN_REPLICATIONS:
        raise InvalidParameterError(f"Need at least {MIN_REPLICATIONS} replications, got {reps}")


def _mean_and_stderr(values: np.ndarray) -> Estimate:
    return Estimate(float(values.mean()), float(values.std(ddof=1) / math.sqrt(values.size)))


def drift_monte_carlo(
    zeta: Configuration,
    params: SystemParams,
    functional: Functional,
    reps: int,
    seed: SeedLike,
) -> Estimate:
    """Average of f(W₁) − f(ζ) over independent one-step transitions from ζ."""
    _check_reps(reps)
    f = as_functional(functional)
    start = f(zeta)
    draws = draw_stream(params, seed)
    values = np.empty(reps)
    for i in range(reps):
        draw = next(draws)
        eta = zeta.add_atoms(draw.arrivals)
        j = poll_index(
            eta.locations, draw.poll_point, params.scan_radius, params.circumference, draw.tie_draw
        )
        if j is not None:
            eta = eta.remove_atom(eta.locations[j])
        values[i] = f(eta) - start
    estimate = _mean_and_stderr(values)
    logger.debug(f"Monte Carlo {f.name} drift {estimate.value:.5g} ± {estimate.stderr:.2g}")
    return estimate


def sample_arrival_functional(
    functional: Functional,
    zeta: Configuration,
    params: SystemParams,
    reps: int,
    seed: SeedLike,
) -> Estimate:
    """Monte Carlo Aₐf(ζ): sample batches, evaluate f(ζ + batch) grouped by batch size."""
    _check_reps(reps)
    f = as_functional(functional)
    rng = np.random.default_rng(seed)
    sizes = sample_batch_sizes(params, rng, reps)
    values = np.empty(reps)
    for n in np.unique(sizes):
        rows = np.flatnonzero(sizes == n)
        batches = rng.uniform(0.0, params.circumference, (rows.size, int(n)))
        values[rows] = f.evaluate_added(zeta, batches)
    return _mean_and_stderr(values)

"""
Stationary estimation of the population.

Visits of W to the empty configuration just after a poll split a path into i.i.d. cycles.
With cycle areas Y_j and lengths L_j the stationary mean is ΣY/ΣL and the 95% half-width is
z·s/(L̄√n), where s² is the sample variance of Y_j − r̂L_j.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from spatialpoll.errors import InsufficientDataError, InvalidParameterError, UnstableSystemError
from spatialpoll.kernels.operators import Estimate, SeedLike
from spatialpoll.kernels.params import SystemParams
from spatialpoll.simulation.chain import PollingChain
from spatialpoll.simulation.paths import draw_stream, run_path

logger = logging.getLogger(__name__)

# Fewer cycles than this and no confidence interval is reported
MIN_CI_CYCLES = 30
CHUNK_STEPS = 50_000


@dataclass
class StationaryEstimate:
    mean_population: float
    half_width_95: Optional[float]
    cycles: int
    cycle_length_mean: float
    tail_histogram: np.ndarray
    method: str = "regenerative"
    complete: bool = True
    steps: int = 0

    @property
    def interval(self) -> Optional[Tuple[float, float]]:
        if self.half_width_95 is None:
            return None
        return self.mean_population - self.half_width_95, self.mean_population + self.half_width_95

    def overlaps(self, other: "StationaryEstimate") -> bool:
        """Whether the two 95% intervals intersect."""
        if self.interval is None or other.interval is None:
            return False
        return self.interval[0] <= other.interval[1] and other.interval[0] <= self.interval[1]


def regenerative_estimate(population: Sequence[int], complete: bool = True) -> StationaryEstimate:
    """
    Ratio estimator over the complete cycles of a post-poll population path.

    Args:
        population: Population after every poll, starting at 0
        complete: Whether the run reached its cycle target

    Returns:
        StationaryEstimate with a 95% interval once MIN_CI_CYCLES cycles are available

    Raises:
        InsufficientDataError: If fewer than two cycles complete
    """
    values = np.asarray(population, dtype=np.int64)
    zeros = np.flatnonzero(values == 0)
    cycles = len(zeros) - 1
    if cycles < 2:
        raise InsufficientDataError(f"Need at least two complete cycles, got {max(cycles, 0)}")

    window = values[zeros[0] : zeros[-1]]
    areas = np.add.reduceat(window, zeros[:-1] - zeros[0]).astype(float)
    lengths = np.diff(zeros).astype(float)
    ratio = areas.sum() / lengths.sum()

    half_width = None
    if cycles >= MIN_CI_CYCLES:
        s = math.sqrt(float(np.sum((areas - ratio * lengths) ** 2)) / (cycles - 1))
        half_width = stats.norm.ppf(0.975) * s / (lengths.mean() * math.sqrt(cycles))

    return StationaryEstimate(
        mean_population=float(ratio),
        half_width_95=half_width,
        cycles=cycles,
        cycle_length_mean=float(lengths.mean()),
        tail_histogram=np.bincount(window),
        complete=complete,
        steps=len(values) - 1,
    )


def stationary_estimate(
    params: SystemParams,
    min_cycles: int,
    max_steps: int,
    seed: SeedLike,
    chunk_steps: int = CHUNK_STEPS,
) -> StationaryEstimate:
    """
    Simulate from empty until `min_cycles` regeneration cycles complete or `max_steps` polls
    have run. A run cut short returns the estimate over the cycles it has, marked incomplete.

    Args:
        params: Stable system parameters
        min_cycles: Regeneration cycles to complete
        max_steps: Poll budget
        seed: Seed of the draw stream
        chunk_steps: Polls simulated between cycle counts

    Returns:
        StationaryEstimate of the time-average population

    Raises:
        UnstableSystemError: If λs₁ ≥ 1
    """
    if not params.is_stable:
        raise UnstableSystemError(f"Stationary estimation needs λs₁ < 1, got {params.load}")
    if min_cycles < 2 or max_steps < 1:
        raise InvalidParameterError("Need min_cycles >= 2 and max_steps >= 1")

    chain = PollingChain(params)
    draws = draw_stream(params, seed)
    chunks = [np.zeros(1, dtype=np.int64)]
    steps = cycles = 0
    while cycles < min_cycles and steps < max_steps:
        size = min(chunk_steps, max_steps - steps)
        block = np.empty(size, dtype=np.int64)
        for t in range(size):
            chain.step(next(draws))
            block[t] = chain.population
        chunks.append(block)
        steps += size
        cycles += int(np.count_nonzero(block == 0))
        logger.debug(f"{steps} polls, {cycles} cycles")

    complete = cycles >= min_cycles
    if not complete:
        logger.warning(
            f"Stopped at max_steps={max_steps} with {cycles} of {min_cycles} cycles; "
            f"reporting a partial estimate"
        )
    estimate = regenerative_estimate(np.concatenate(chunks), complete=complete)
    logger.info(
        f"Stationary mean {estimate.mean_population:.4g} from {estimate.cycles} cycles "
        f"(λ={params.arrival_rate}, r={params.scan_radius})"
    )
    return estimate


def batch_means(values: Sequence[float], batches: int = 30) -> Estimate:
    """Mean of a correlated series with the standard error of its batch means."""
    data = np.asarray(values, dtype=float)
    if batches < 2:
        raise InvalidParameterError(f"Need at least two batches, got {batches}")
    size = data.size // batches
    if size < 1:
        raise InsufficientDataError(f"{data.size} values cannot fill {batches} batches")
    means = data[: size * batches].reshape(batches, size).mean(axis=1)
    return Estimate(float(means.mean()), float(means.std(ddof=1) / math.sqrt(batches)))


def batch_means_estimate(
    params: SystemParams,
    steps: int,
    seed: SeedLike,
    burn_in_fraction: float = 0.1,
    batches: int = 30,
) -> StationaryEstimate:
    """One long run with burn-in and batch-means interval, for traffic too heavy to regenerate."""
    if not params.is_stable:
        raise UnstableSystemError(f"Stationary estimation needs λs₁ < 1, got {params.load}")
    if not 0.0 <= burn_in_fraction < 1.0:
        raise InvalidParameterError(f"Burn-in fraction must lie in [0, 1), got {burn_in_fraction}")
    path = run_path(params, steps, seed)
    kept = path.population[int(burn_in_fraction * (steps + 1)) :]
    estimate = batch_means(kept, batches)
    half_width = stats.t.ppf(0.975, batches - 1) * estimate.stderr
    zeros = int(np.count_nonzero(kept == 0))
    logger.info(f"Batch-means stationary mean {estimate.value:.4g} over {kept.size} polls")
    return StationaryEstimate(
        mean_population=estimate.value,
        half_width_95=float(half_width),
        cycles=zeros,
        cycle_length_mean=kept.size / max(zeros, 1),
        tail_histogram=np.bincount(kept),
        method="batch_means",
        steps=steps,
    )

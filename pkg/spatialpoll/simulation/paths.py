"""
Sample paths of the chain W at polling instants.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, Optional, Sequence

import numpy as np
import pandas as pd
from scipy import stats

from spatialpoll.errors import InsufficientDataError, InvalidParameterError
from spatialpoll.kernels.arrivals import StepDraw, StepDrawStream
from spatialpoll.kernels.operators import Estimate, SeedLike
from spatialpoll.kernels.params import SystemParams
from spatialpoll.measures.configurations import Configuration
from spatialpoll.simulation.chain import PollingChain

logger = logging.getLogger(__name__)


@dataclass
class PathRecord:
    """Population ‖W_t‖ at every polling instant t = 0..steps, with per-step bookkeeping."""

    params: SystemParams
    seed: SeedLike
    steps: int
    population: np.ndarray
    arrivals: np.ndarray
    served: np.ndarray
    snapshots: Dict[int, Configuration] = field(default_factory=dict)

    @property
    def empty_fraction(self) -> float:
        return float(np.mean(self.population == 0))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"step": np.arange(self.steps + 1), "population": self.population})


def draw_stream(params: SystemParams, seed: SeedLike) -> Iterator[StepDraw]:
    return iter(StepDrawStream(params, np.random.default_rng(seed)))


def _check_steps(steps: int) -> None:
    if steps < 1:
        raise InvalidParameterError(f"Need at least one step, got {steps}")


def run_path(
    params: SystemParams,
    steps: int,
    seed: SeedLike,
    initial: Optional[Configuration] = None,
    snapshot_steps: Iterable[int] = (),
) -> PathRecord:
    """
    Simulate `steps` polling cycles from `initial` (empty by default).

    Args:
        params: System parameters
        steps: Number of polls
        seed: Seed of the draw stream
        initial: Starting configuration
        snapshot_steps: Steps whose configuration is kept in the record

    Returns:
        PathRecord with population after every poll, arrivals and services per poll
    """
    _check_steps(steps)
    chain = PollingChain(params, initial)
    draws = draw_stream(params, seed)
    wanted = set(snapshot_steps)

    population = np.empty(steps + 1, dtype=np.int64)
    arrivals = np.empty(steps, dtype=np.int64)
    served = np.empty(steps, dtype=np.int64)
    population[0] = chain.population
    snapshots = {0: chain.configuration()} if 0 in wanted else {}

    for t in range(steps):
        outcome = chain.step(next(draws))
        arrivals[t] = outcome.arrivals
        served[t] = outcome.served
        population[t + 1] = chain.population
        if t + 1 in wanted:
            snapshots[t + 1] = chain.configuration()

    logger.info(
        f"Simulated {steps} polls at λ={params.arrival_rate}, r={params.scan_radius}: "
        f"final population {population[-1]}"
    )
    return PathRecord(params, seed, steps, population, arrivals, served, snapshots)


@dataclass
class LaplaceSample:
    """Pre-poll population and scan-success probability, cut at the last regeneration."""

    population: np.ndarray
    scan_success: np.ndarray
    cycles: int

    def __len__(self) -> int:
        return len(self.population)


def collect_laplace_sample(params: SystemParams, steps: int, seed: SeedLike) -> LaplaceSample:
    """
    Record (‖V_t‖, k_r(V_t)) for the configuration V_t seen by the t-th poll.

    The run starts empty and is truncated after the last poll that empties the system, so the
    sample consists of complete regeneration cycles.
    """
    _check_steps(steps)
    chain = PollingChain(params)
    draws = draw_stream(params, seed)
    population = np.empty(steps, dtype=np.int64)
    success = np.empty(steps)
    last_regeneration = 0
    cycles = 0
    for t in range(steps):
        outcome = chain.step(next(draws))
        population[t] = outcome.pre_poll_population
        success[t] = outcome.pre_poll_scan_success
        if chain.population == 0:
            last_regeneration = t + 1
            cycles += 1
    if cycles == 0:
        raise InsufficientDataError("The system never emptied, no complete cycle recorded")
    logger.info(f"Collected {last_regeneration} pre-poll states over {cycles} cycles")
    return LaplaceSample(population[:last_regeneration], success[:last_regeneration], cycles)


def coupled_paths(
    params: SystemParams,
    radii: Sequence[float],
    steps: int,
    seed: SeedLike,
    initial: Optional[Configuration] = None,
) -> Dict[float, np.ndarray]:
    """Population paths for several scan radii driven by one shared stream of draws."""
    _check_steps(steps)
    chains = {r: PollingChain(params.with_radius(r), initial) for r in radii}
    paths = {r: np.empty(steps + 1, dtype=np.int64) for r in radii}
    for r, chain in chains.items():
        paths[r][0] = chain.population
    draws = draw_stream(params, seed)
    for t in range(steps):
        draw = next(draws)
        for r, chain in chains.items():
            chain.step(draw)
            paths[r][t + 1] = chain.population
    return paths


def emptying_probability(
    params: SystemParams,
    initial: Configuration,
    horizon: int,
    reps: int,
    seed: SeedLike,
) -> Estimate:
    """Probability that the chain started at `initial` is empty at some poll t ≤ horizon."""
    _check_steps(horizon)
    if reps < 2:
        raise InvalidParameterError(f"Need at least two replications, got {reps}")
    if initial.is_empty:
        return Estimate(1.0, 0.0)
    draws = draw_stream(params, seed)
    hits = 0
    for _ in range(reps):
        chain = PollingChain(params, initial)
        for _ in range(horizon):
            chain.step(next(draws))
            if chain.population == 0:
                hits += 1
                break
    p = hits / reps
    return Estimate(p, float(np.sqrt(p * (1.0 - p) / reps)))


def emptying_lower_bound(params: SystemParams, n: int) -> float:
    """(G_λ(0) m(B_r))ⁿ: n polls without arrivals, each serving someone."""
    return (params.empty_batch_probability * params.scan_measure) ** n


def growth_slope(population: Sequence[int]) -> float:
    """Least-squares slope of the population over the second half of a path."""
    values = np.asarray(population, dtype=float)
    if values.size < 4:
        raise InsufficientDataError("Need at least four points to fit a growth slope")
    half = values.size // 2
    return float(stats.linregress(np.arange(half, values.size), values[half:]).slope)


__all__ = [
    "PathRecord",
    "LaplaceSample",
    "run_path",
    "collect_laplace_sample",
    "coupled_paths",
    "emptying_probability",
    "emptying_lower_bound",
    "growth_slope",
]

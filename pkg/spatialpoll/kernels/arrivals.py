"""
Random inputs of one polling cycle: the batch of arrivals and the scan location.

A batch is drawn by sampling S ~ G, then N ~ Poisson(λS), then N uniform locations.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple, Tuple

import numpy as np

from spatialpoll.kernels.params import SystemParams

DEFAULT_BLOCK = 4096


def sample_interarrival_batch(
    params: SystemParams, rng: np.random.Generator
) -> Tuple[int, np.ndarray]:
    """One interpolling time worth of arrivals: (count, locations)."""
    s = params.distribution.sample(rng)
    count = int(rng.poisson(params.arrival_rate * float(s)))
    return count, rng.uniform(0.0, params.circumference, count)


def sample_batch_sizes(params: SystemParams, rng: np.random.Generator, size: int) -> np.ndarray:
    """Independent batch sizes N ~ G_λ."""
    s = params.distribution.sample(rng, size)
    return rng.poisson(params.arrival_rate * s)


class StepDraw(NamedTuple):
    """Everything random in one step: arrival locations, scan point, tie breaker."""

    arrivals: np.ndarray
    poll_point: float
    tie_draw: float


class StepDrawStream:
    """
    Endless stream of StepDraws, generated in blocks.

    Coupled systems read the same stream, so their arrivals and scan points coincide.
    """

    def __init__(self, params: SystemParams, rng: np.random.Generator, block: int = DEFAULT_BLOCK):
        self.params = params
        self.rng = rng
        self.block = block

    def __iter__(self) -> Iterator[StepDraw]:
        length = self.params.circumference
        while True:
            counts = sample_batch_sizes(self.params, self.rng, self.block)
            locations = self.rng.uniform(0.0, length, int(counts.sum()))
            polls = self.rng.uniform(0.0, length, self.block)
            ties = self.rng.random(self.block)
            bounds = np.concatenate(([0], np.cumsum(counts)))
            for i in range(self.block):
                batch = locations[bounds[i] : bounds[i + 1]]
                yield StepDraw(batch, float(polls[i]), float(ties[i]))

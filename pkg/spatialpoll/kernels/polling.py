"""
The polling operator Aₚ.

A poll scans a uniform point U and serves one customer at the distinct atom nearest to U,
provided that atom lies at distance < r. Otherwise the configuration is left unchanged.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from spatialpoll.geometry.circle import (
    CirclePoint,
    arc_distance,
    cell_ball_measures,
    union_balls_measure,
    wrap,
)
from spatialpoll.kernels.params import SystemParams
from spatialpoll.measures.configurations import Configuration


def poll_index(
    locations: Sequence[float],
    u: CirclePoint,
    r: float,
    circumference: float,
    tie_draw: float = 0.0,
) -> Optional[int]:
    """
    Index of the atom served by a scan at u, or None when nothing lies within distance r.

    `locations` must be sorted. The nearest atom is one of the two atoms bracketing u;
    an exact tie goes to the clockwise one when tie_draw < 0.5.
    """
    n = len(locations)
    if n == 0:
        return None
    i = bisect.bisect_left(locations, u)
    right = i % n
    left = (i - 1) % n
    d_right = arc_distance(u, locations[right], circumference)
    if left == right:
        best, d_best = right, d_right
    else:
        d_left = arc_distance(u, locations[left], circumference)
        if d_left < d_right or (d_left == d_right and tie_draw < 0.5):
            best, d_best = left, d_left
        else:
            best, d_best = right, d_right
    return best if d_best < r else None


def sample_poll(
    zeta: Configuration, params: SystemParams, rng: np.random.Generator
) -> Configuration:
    """One random poll of ζ."""
    u = wrap(rng.uniform(0.0, params.circumference), params.circumference)
    tie_draw = rng.random()
    i = poll_index(zeta.locations, u, params.scan_radius, params.circumference, tie_draw)
    if i is None:
        return zeta
    return zeta.remove_atom(zeta.locations[i])


@dataclass(frozen=True)
class PollOutcomeDistribution:
    """Exact law of the configuration after one poll."""

    outcomes: Tuple[Tuple[Configuration, float], ...]

    @property
    def total_probability(self) -> float:
        return sum(p for _, p in self.outcomes)

    @property
    def no_service_probability(self) -> float:
        # the no-service outcome is always listed last
        return self.outcomes[-1][1]

    @property
    def service_probability(self) -> float:
        return sum(p for _, p in self.outcomes[:-1])

    def expectation(self, f: Callable[[Configuration], float]) -> float:
        return float(sum(p * f(outcome) for outcome, p in self.outcomes))


def poll_outcome_distribution(zeta: Configuration, params: SystemParams) -> PollOutcomeDistribution:
    if zeta.is_empty:
        return PollOutcomeDistribution(((zeta, 1.0),))
    weights = cell_ball_measures(zeta, params.scan_radius)
    served = tuple(
        (zeta.remove_atom(x), float(w)) for x, w in zip(zeta.locations, weights)
    )
    k = union_balls_measure(zeta, params.scan_radius)
    return PollOutcomeDistribution(served + ((zeta, 1.0 - k),))


def apply_polling_operator(
    f: Callable[[Configuration], float], zeta: Configuration, params: SystemParams
) -> float:
    """Aₚf(ζ) = f(ζ)(1 − k_r(ζ)) + Σ_x f(ζ − δ_x) m(B_r(x) ∩ Γ_ζ(x))"""
    return poll_outcome_distribution(zeta, params).expectation(f)

"""
Mutable state of one simulated polling system.

Atoms are kept as sorted parallel lists of locations and counts. The covered arc length
Σ min(gap, 2r) is maintained incrementally, so the scan-success probability of the current
configuration is available in O(1) at every polling instant.
"""

from __future__ import annotations

import bisect
from typing import List, NamedTuple, Optional

from spatialpoll.errors import CircumferenceMismatchError
from spatialpoll.geometry.circle import wrap
from spatialpoll.kernels.arrivals import StepDraw
from spatialpoll.kernels.params import SystemParams
from spatialpoll.kernels.polling import poll_index
from spatialpoll.measures.configurations import Configuration


class StepOutcome(NamedTuple):
    arrivals: int
    served: int
    pre_poll_population: int
    pre_poll_scan_success: float


class PollingChain:
    """The chain W at polling instants, advanced by externally supplied draws."""

    def __init__(self, params: SystemParams, initial: Optional[Configuration] = None):
        self.params = params
        self._length = params.circumference
        self._span = 2.0 * params.scan_radius
        if initial is None:
            initial = Configuration.empty(params.circumference)
        if initial.circumference != params.circumference:
            raise CircumferenceMismatchError(
                f"Initial state on circumference {initial.circumference}, "
                f"system on {params.circumference}"
            )
        self.locations: List[float] = list(initial.locations)
        self.counts: List[int] = list(initial.counts)
        self.population = sum(self.counts)
        self._covered = 0.0
        self._recompute()

    def _cover(self, gap: float) -> float:
        return min(gap, self._span)

    def _recompute(self) -> None:
        n = len(self.locations)
        if n == 0:
            self._covered = 0.0
        elif n == 1:
            self._covered = min(self._span, self._length)
        else:
            xs = self.locations
            total = sum(self._cover(xs[i + 1] - xs[i]) for i in range(n - 1))
            self._covered = total + self._cover(xs[0] + self._length - xs[-1])

    @property
    def scan_success(self) -> float:
        """k_r of the current configuration."""
        return min(self._covered, self._length) / self._length

    def configuration(self) -> Configuration:
        return Configuration(tuple(self.locations), tuple(self.counts), self._length)

    def add(self, x: float) -> None:
        x = wrap(float(x), self._length)
        i = bisect.bisect_left(self.locations, x)
        n = len(self.locations)
        self.population += 1
        if i < n and self.locations[i] == x:
            self.counts[i] += 1
            return
        if n >= 2:
            prev, nxt = self.locations[i - 1], self.locations[i % n]
            self._covered += (
                self._cover((x - prev) % self._length)
                + self._cover((nxt - x) % self._length)
                - self._cover((nxt - prev) % self._length)
            )
            self.locations.insert(i, x)
            self.counts.insert(i, 1)
        else:
            self.locations.insert(i, x)
            self.counts.insert(i, 1)
            self._recompute()

    def serve(self, i: int) -> None:
        """Remove one customer from the i-th distinct atom."""
        self.population -= 1
        self.counts[i] -= 1
        if self.counts[i] > 0:
            return
        n = len(self.locations)
        x = self.locations[i]
        if n >= 3:
            prev, nxt = self.locations[i - 1], self.locations[(i + 1) % n]
            self._covered += (
                self._cover((nxt - prev) % self._length)
                - self._cover((x - prev) % self._length)
                - self._cover((nxt - x) % self._length)
            )
            del self.locations[i]
            del self.counts[i]
        else:
            del self.locations[i]
            del self.counts[i]
            self._recompute()

    def step(self, draw: StepDraw) -> StepOutcome:
        """Arrivals of one interpolling time, then one poll."""
        for x in draw.arrivals:
            self.add(x)
        before, success = self.population, self.scan_success
        i = poll_index(
            self.locations,
            draw.poll_point,
            self.params.scan_radius,
            self._length,
            draw.tie_draw,
        )
        if i is not None:
            self.serve(i)
        return StepOutcome(len(draw.arrivals), int(i is not None), before, success)

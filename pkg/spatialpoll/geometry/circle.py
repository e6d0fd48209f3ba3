"""
Circle geometry for spatialpoll.

Points are arc-length coordinates in [0, ℓ). Travelling anticlockwise means increasing the
coordinate. The uniform measure m is always normalized to total mass 1, so every measure
returned here is a length divided by ℓ.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import TYPE_CHECKING, Dict, Iterable, List, Sequence, Tuple

import numpy as np

from spatialpoll.errors import AtomNotFoundError, InvalidParameterError

if TYPE_CHECKING:
    from spatialpoll.measures.configurations import Configuration

CirclePoint = float


def check_circumference(length: float) -> None:
    """Reject nonpositive circumferences."""
    if not length > 0:
        raise InvalidParameterError(f"Circumference must be positive, got {length}")


def wrap(x: float, length: float) -> CirclePoint:
    """Reduce a coordinate modulo the circumference into [0, length)."""
    y = x % length
    if y >= length:
        # -1e-18 % 1.0 rounds up to 1.0
        return 0.0
    return float(y)


def arc_distance(x: CirclePoint, y: CirclePoint, length: float) -> float:
    """Length of the shortest arc between x and y."""
    check_circumference(length)
    diff = abs(x - y) % length
    return min(diff, length - diff)


def pairwise_distances(xs: Sequence[float], ys: Sequence[float], length: float) -> np.ndarray:
    """Matrix of arc distances d(xs[i], ys[j])."""
    diff = np.abs(np.subtract.outer(np.asarray(xs, dtype=float), np.asarray(ys, dtype=float)))
    diff = np.mod(diff, length)
    return np.minimum(diff, length - diff)


def ball_measure(r: float, length: float) -> float:
    """Normalized measure m(B_r) of an open ball of radius r."""
    if not r > 0:
        raise InvalidParameterError(f"Ball radius must be positive, got {r}")
    check_circumference(length)
    return min(2.0 * r / length, 1.0)


@dataclass(frozen=True)
class Arc:
    """Open arc running anticlockwise from `start` over `length` units of arc length."""

    start: CirclePoint
    length: float
    circumference: float

    def __post_init__(self):
        check_circumference(self.circumference)
        if not 0.0 <= self.start < self.circumference:
            raise InvalidParameterError(
                f"Arc start {self.start} outside [0, {self.circumference})"
            )
        if not 0.0 <= self.length <= self.circumference:
            raise InvalidParameterError(
                f"Arc length {self.length} outside [0, {self.circumference}]"
            )

    @classmethod
    def around(cls, center: float, left: float, right: float, circumference: float) -> "Arc":
        """Arc (center - left, center + right), clipped to the whole circle."""
        total = min(left + right, circumference)
        return cls(wrap(center - left, circumference), total, circumference)

    @property
    def end(self) -> CirclePoint:
        return wrap(self.start + self.length, self.circumference)

    @property
    def measure(self) -> float:
        return self.length / self.circumference

    def contains(self, z: CirclePoint) -> bool:
        """Whether z lies in the open arc (a full arc contains every point)."""
        if self.length >= self.circumference:
            return True
        offset = (z - self.start) % self.circumference
        return 0.0 < offset < self.length

    def pieces(self) -> List[Tuple[float, float]]:
        """The arc cut at 0 into at most two intervals of [0, ℓ]."""
        hi = self.start + self.length
        if hi <= self.circumference:
            return [(self.start, hi)]
        return [(self.start, self.circumference), (0.0, hi - self.circumference)]

    def intersection_length(self, other: "Arc") -> float:
        """Arc length of the intersection with another arc on the same circle."""
        total = 0.0
        for lo1, hi1 in self.pieces():
            for lo2, hi2 in other.pieces():
                total += max(0.0, min(hi1, hi2) - max(lo1, lo2))
        return total


@dataclass(frozen=True)
class ArcSet:
    """Pairwise-disjoint arcs in canonical (sorted by start) order."""

    arcs: Tuple[Arc, ...]
    circumference: float

    @classmethod
    def union(cls, arcs: Iterable[Arc], circumference: float) -> "ArcSet":
        """Merge arbitrary arcs into their disjoint union."""
        check_circumference(circumference)
        pieces = sorted(p for arc in arcs for p in arc.pieces() if p[1] > p[0])
        merged: List[List[float]] = []
        for lo, hi in pieces:
            if merged and lo <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])

        if not merged:
            return cls((), circumference)
        if merged[0][0] <= 0.0 and merged[-1][1] >= circumference:
            if len(merged) == 1:
                return cls((Arc(0.0, circumference, circumference),), circumference)
            # join the piece that ends at ℓ with the one starting at 0
            last = merged.pop()
            first = merged.pop(0)
            wrapped = Arc(last[0], (circumference - last[0]) + first[1], circumference)
            rest = [Arc(lo, hi - lo, circumference) for lo, hi in merged]
            return cls(tuple(sorted(rest + [wrapped], key=lambda a: a.start)), circumference)
        return cls(tuple(Arc(lo, hi - lo, circumference) for lo, hi in merged), circumference)

    @property
    def length(self) -> float:
        return sum(arc.length for arc in self.arcs)

    @property
    def measure(self) -> float:
        return self.length / self.circumference


def neighbor_gaps(locations: Sequence[float], length: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Gaps from each distinct atom to its clockwise and anticlockwise neighbours.

    A lone atom sees the whole circle on both sides.
    """
    x = np.asarray(locations, dtype=float)
    if x.size == 1:
        full = np.array([length])
        return full, full
    gaps_next = np.mod(np.roll(x, -1) - x, length)
    gaps_prev = np.roll(gaps_next, 1)
    return gaps_prev, gaps_next


def _require_nonempty(config: "Configuration") -> None:
    if not config.locations:
        raise InvalidParameterError("Voronoi cells of an empty configuration are undefined")


def voronoi_cells(config: "Configuration") -> Dict[CirclePoint, Arc]:
    """Voronoi cell of every distinct atom, as an open arc between neighbour midpoints."""
    _require_nonempty(config)
    length = config.circumference
    gaps_prev, gaps_next = neighbor_gaps(config.locations, length)
    return {
        x: Arc.around(x, float(gp) / 2.0, float(gn) / 2.0, length)
        for x, gp, gn in zip(config.locations, gaps_prev, gaps_next)
    }


def cell_measures(config: "Configuration") -> np.ndarray:
    """Normalized measures m(Γ_ζ(x)) in atom order."""
    _require_nonempty(config)
    gaps_prev, gaps_next = neighbor_gaps(config.locations, config.circumference)
    return np.minimum((gaps_prev + gaps_next) / 2.0, config.circumference) / config.circumference


def cell_ball_measures(config: "Configuration", r: float) -> np.ndarray:
    """Normalized measures m(B_r(x) ∩ Γ_ζ(x)) in atom order."""
    _require_nonempty(config)
    if not r > 0:
        raise InvalidParameterError(f"Scan radius must be positive, got {r}")
    gaps_prev, gaps_next = neighbor_gaps(config.locations, config.circumference)
    covered = np.minimum(gaps_prev / 2.0, r) + np.minimum(gaps_next / 2.0, r)
    return np.minimum(covered, config.circumference) / config.circumference


def atom_index(config: "Configuration", x: CirclePoint) -> int:
    """Position of the distinct atom located exactly at x."""
    i = bisect.bisect_left(config.locations, x)
    if i == len(config.locations) or config.locations[i] != x:
        raise AtomNotFoundError(f"{x} is not an atom of the configuration")
    return i


def cell_ball_measure(x: CirclePoint, config: "Configuration", r: float) -> float:
    """Probability that a scan serves the atom at x."""
    i = atom_index(config, x)
    return float(cell_ball_measures(config, r)[i])


def union_balls_measure(config: "Configuration", r: float) -> float:
    """
    Scan-success probability k_r(ζ) = m(∪ B_r(x)).

    Between two consecutive atoms separated by a gap g the balls cover min(g, 2r).
    """
    if not r > 0:
        raise InvalidParameterError(f"Scan radius must be positive, got {r}")
    if not config.locations:
        return 0.0
    length = config.circumference
    if len(config.locations) == 1:
        return min(2.0 * r, length) / length
    _, gaps_next = neighbor_gaps(config.locations, length)
    return float(min(np.minimum(gaps_next, 2.0 * r).sum(), length) / length)


def ball_union(config: "Configuration", r: float) -> ArcSet:
    """The union of open r-balls around the atoms, as an ArcSet."""
    if not r > 0:
        raise InvalidParameterError(f"Scan radius must be positive, got {r}")
    length = config.circumference
    return ArcSet.union((Arc.around(x, r, r, length) for x in config.locations), length)


def covering_arcs(n: int, length: float) -> List[Arc]:
    """n closed-cover arcs [iℓ/n, (i+1)ℓ/n] of equal length."""
    if n < 1:
        raise InvalidParameterError(f"Need at least one covering arc, got {n}")
    check_circumference(length)
    return [Arc(i * length / n, length / n, length) for i in range(n)]


__all__ = [
    "CirclePoint",
    "Arc",
    "ArcSet",
    "wrap",
    "arc_distance",
    "pairwise_distances",
    "ball_measure",
    "neighbor_gaps",
    "voronoi_cells",
    "cell_measures",
    "cell_ball_measures",
    "cell_ball_measure",
    "union_balls_measure",
    "ball_union",
    "covering_arcs",
    "atom_index",
]

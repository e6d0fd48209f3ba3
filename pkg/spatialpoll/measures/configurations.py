"""
Counting measures on the circle.

A Configuration is the state of the system: customers at located atoms with positive integer
multiplicities. A SignedConfiguration allows negative weights and is the domain of the
quadratic energy form.
"""

from __future__ import annotations

import bisect
import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, Sequence, Tuple

import numpy as np

from spatialpoll.errors import (
    AtomNotFoundError,
    CircumferenceMismatchError,
    InvalidParameterError,
)
from spatialpoll.geometry.circle import CirclePoint, check_circumference, wrap


def _merge(
    atoms: Iterable[Tuple[float, int]], circumference: float
) -> Tuple[Tuple[float, ...], Tuple[int, ...]]:
    totals: Dict[float, int] = defaultdict(int)
    for location, weight in atoms:
        totals[wrap(float(location), circumference)] += int(weight)
    ordered = sorted((x, w) for x, w in totals.items() if w != 0)
    return tuple(x for x, _ in ordered), tuple(w for _, w in ordered)


@dataclass(frozen=True)
class SignedConfiguration:
    """Integer-weighted atoms in strictly increasing location order."""

    locations: Tuple[CirclePoint, ...]
    weights: Tuple[int, ...]
    circumference: float = 1.0

    def __post_init__(self):
        check_circumference(self.circumference)
        if len(self.locations) != len(self.weights):
            raise InvalidParameterError("Locations and weights must have equal length")
        previous = -math.inf
        for x in self.locations:
            if not (previous < x < self.circumference and x >= 0.0):
                raise InvalidParameterError(
                    f"Locations must be strictly increasing in [0, {self.circumference}), "
                    f"got {x} after {previous}"
                )
            previous = x
        self._check_weights()

    def _check_weights(self) -> None:
        if any(w == 0 for w in self.weights):
            raise InvalidParameterError("Signed atoms must carry nonzero weights")

    @classmethod
    def from_atoms(
        cls, atoms: Iterable[Tuple[float, int]], circumference: float = 1.0
    ) -> "SignedConfiguration":
        """Build from (location, weight) pairs; repeated locations are summed."""
        check_circumference(circumference)
        locations, weights = _merge(atoms, circumference)
        return cls(locations, weights, circumference)

    @classmethod
    def empty(cls, circumference: float = 1.0) -> "SignedConfiguration":
        return cls((), (), circumference)

    @property
    def atoms(self) -> Tuple[Tuple[CirclePoint, int], ...]:
        return tuple(zip(self.locations, self.weights))

    @property
    def total_variation(self) -> int:
        return sum(abs(w) for w in self.weights)

    @property
    def is_empty(self) -> bool:
        return not self.locations

    def weight_array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)

    def location_array(self) -> np.ndarray:
        return np.asarray(self.locations, dtype=float)

    def to_signed(self) -> "SignedConfiguration":
        return SignedConfiguration(self.locations, self.weights, self.circumference)

    def _require_same_circle(self, other: "SignedConfiguration") -> None:
        if other.circumference != self.circumference:
            raise CircumferenceMismatchError(
                f"Circumferences differ: {self.circumference} vs {other.circumference}"
            )

    def __add__(self, other: "SignedConfiguration") -> "SignedConfiguration":
        self._require_same_circle(other)
        return SignedConfiguration.from_atoms(
            list(self.atoms) + list(other.atoms), self.circumference
        )

    def __neg__(self) -> "SignedConfiguration":
        return SignedConfiguration(
            self.locations, tuple(-w for w in self.weights), self.circumference
        )

    def __sub__(self, other: "SignedConfiguration") -> "SignedConfiguration":
        return self + (-other)

    def __iter__(self) -> Iterator[Tuple[CirclePoint, int]]:
        return iter(self.atoms)

    def __len__(self) -> int:
        return len(self.locations)


@dataclass(frozen=True)
class Configuration(SignedConfiguration):
    """Finite counting measure: customer locations with positive multiplicities."""

    def _check_weights(self) -> None:
        if any(w < 1 for w in self.weights):
            raise InvalidParameterError("Configuration counts must be positive integers")

    @classmethod
    def from_atoms(
        cls, atoms: Iterable[Tuple[float, int]], circumference: float = 1.0
    ) -> "Configuration":
        check_circumference(circumference)
        locations, weights = _merge(atoms, circumference)
        return cls(locations, weights, circumference)

    @classmethod
    def empty(cls, circumference: float = 1.0) -> "Configuration":
        return cls((), (), circumference)

    @classmethod
    def from_locations(
        cls, locations: Iterable[float], circumference: float = 1.0
    ) -> "Configuration":
        """One customer per listed location; coincident locations stack."""
        return cls.from_atoms(((x, 1) for x in locations), circumference)

    @classmethod
    def cluster(cls, x: float, n: int, circumference: float = 1.0) -> "Configuration":
        """n customers at the single point x."""
        if n < 0:
            raise InvalidParameterError(f"Cluster size must be nonnegative, got {n}")
        if n == 0:
            return cls.empty(circumference)
        return cls((wrap(x, circumference),), (n,), circumference)

    @property
    def counts(self) -> Tuple[int, ...]:
        return self.weights

    def count_at(self, x: CirclePoint) -> int:
        i = bisect.bisect_left(self.locations, x)
        if i < len(self.locations) and self.locations[i] == x:
            return self.weights[i]
        return 0

    def add_atom(self, x: CirclePoint) -> "Configuration":
        """Add one customer at x."""
        x = wrap(float(x), self.circumference)
        i = bisect.bisect_left(self.locations, x)
        if i < len(self.locations) and self.locations[i] == x:
            counts = self.weights[:i] + (self.weights[i] + 1,) + self.weights[i + 1 :]
            return Configuration(self.locations, counts, self.circumference)
        return Configuration(
            self.locations[:i] + (x,) + self.locations[i:],
            self.weights[:i] + (1,) + self.weights[i:],
            self.circumference,
        )

    def add_atoms(self, locations: Sequence[float]) -> "Configuration":
        """Add one customer at each listed location."""
        if len(locations) == 0:
            return self
        return Configuration.from_atoms(
            list(self.atoms) + [(x, 1) for x in locations], self.circumference
        )

    def remove_atom(self, x: CirclePoint) -> "Configuration":
        """Remove one customer from the atom at x."""
        i = bisect.bisect_left(self.locations, x)
        if i == len(self.locations) or self.locations[i] != x:
            raise AtomNotFoundError(f"{x} is not an atom of the configuration")
        if self.weights[i] > 1:
            counts = self.weights[:i] + (self.weights[i] - 1,) + self.weights[i + 1 :]
            return Configuration(self.locations, counts, self.circumference)
        return Configuration(
            self.locations[:i] + self.locations[i + 1 :],
            self.weights[:i] + self.weights[i + 1 :],
            self.circumference,
        )

    def to_text(self) -> str:
        """Debug snapshot, one "location:count" line per atom."""
        return "".join(f"{x!r}:{c}\n" for x, c in self.atoms)

    @classmethod
    def from_text(cls, text: str, circumference: float = 1.0) -> "Configuration":
        atoms = []
        for line_number, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line:
                continue
            try:
                location, count = line.rsplit(":", 1)
                atoms.append((float(location), int(count)))
            except ValueError as e:
                raise InvalidParameterError(
                    f"Malformed snapshot line {line_number}: {line!r}"
                ) from e
        return cls.from_atoms(atoms, circumference)


def add_atom(config: Configuration, x: CirclePoint) -> Configuration:
    return config.add_atom(x)


def remove_atom(config: Configuration, x: CirclePoint) -> Configuration:
    return config.remove_atom(x)


def total_variation(measure: SignedConfiguration) -> int:
    """Number of customers, or Σ|weights| for a signed measure."""
    return measure.total_variation


def difference(zeta: Configuration, eta: Configuration) -> SignedConfiguration:
    """Atomwise signed difference ζ − η."""
    return zeta.to_signed() - eta.to_signed()

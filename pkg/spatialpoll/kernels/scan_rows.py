"""
Vectorized geometry of many configurations ζ + batch at once.

Row i holds the atoms of ζ followed by the i-th batch of arrival locations, sorted around the
circle. Arrival locations are continuous, so a batch never lands on an existing atom.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from spatialpoll.lyapunov.energy import EnergyParams, triangular_kernel
from spatialpoll.measures.configurations import SignedConfiguration


@dataclass(frozen=True)
class ScanRows:
    locations: np.ndarray
    weights: np.ndarray
    circumference: float
    scan_radius: float
    cells: np.ndarray
    coverage: np.ndarray

    @classmethod
    def build(cls, zeta: SignedConfiguration, batches: np.ndarray, r: float) -> "ScanRows":
        length = zeta.circumference
        batches = np.mod(np.atleast_2d(np.asarray(batches, dtype=float)), length)
        m = batches.shape[0]
        base_x = np.broadcast_to(zeta.location_array(), (m, len(zeta)))
        base_w = np.broadcast_to(zeta.weight_array(), (m, len(zeta)))
        x = np.concatenate([base_x, batches], axis=1)
        w = np.concatenate([base_w, np.ones_like(batches)], axis=1)

        if x.shape[1] == 0:
            return cls(x, w, length, r, np.zeros_like(x), np.zeros(m))

        order = np.argsort(x, axis=1, kind="stable")
        x = np.take_along_axis(x, order, axis=1)
        w = np.take_along_axis(w, order, axis=1)
        gaps_next = np.diff(np.concatenate([x, x[:, :1] + length], axis=1), axis=1)
        gaps_prev = np.roll(gaps_next, 1, axis=1)
        cells = (np.minimum(gaps_prev / 2.0, r) + np.minimum(gaps_next / 2.0, r)) / length
        coverage = np.minimum(cells.sum(axis=1), 1.0)
        return cls(x, w, length, r, cells, coverage)

    @property
    def population(self) -> np.ndarray:
        return self.weights.sum(axis=1)

    def kernel(self, p: EnergyParams) -> np.ndarray:
        """(m, P, P) kernel matrices (a − d(x_i, x_j))₊ per row."""
        diff = np.abs(self.locations[:, :, None] - self.locations[:, None, :])
        diff = np.mod(diff, self.circumference)
        return triangular_kernel(np.minimum(diff, self.circumference - diff), p.a)

    def energy_terms(self, p: EnergyParams) -> Tuple[np.ndarray, np.ndarray]:
        """h per row and the vector ⟨η, δ_x⟩ₐ over the atoms x of each row."""
        kw = np.einsum("mij,mj->mi", self.kernel(p), self.weights)
        return np.einsum("mi,mi->m", self.weights, kw), kw

    def interpolation_sums(self, p: EnergyParams) -> np.ndarray:
        """g(x, η) with scan balls for every atom of every row."""
        return np.einsum("mij,mj->mi", self.kernel(p), self.cells)

    def polled_transform(self, p: EnergyParams, transform) -> np.ndarray:
        """
        Aₚ(T∘h) per row by exact poll enumeration.

        Removing one customer at x changes h to h − 2⟨η, δ_x⟩ₐ + a.
        """
        h, kw = self.energy_terms(p)
        served = transform(h[:, None] - 2.0 * kw + p.a)
        return transform(h) * (1.0 - self.coverage) + np.sum(self.cells * served, axis=1)

    def energy_slack(self, p: EnergyParams) -> np.ndarray:
        """
        a(1 − k_r(η)) + 2 Σ_x η(x)(g(x,η) − a²/ℓ), the gap between Aₚh(η) and the linear
        majorant h(η) + a − 2(a²/ℓ)‖η‖.
        """
        g = self.interpolation_sums(p)
        excess = np.sum(self.weights * (g - p.a_squared_normalized), axis=1)
        return p.a * (1.0 - self.coverage) + 2.0 * excess

"""
Quadratic energy form on signed counting measures.

    ⟨ζ,η⟩ₐ = Σ_x Σ_y (a − d(x,y))₊ ζ({x}) η({y}),   ‖ζ‖ₐ = √⟨ζ,ζ⟩ₐ
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from spatialpoll.errors import CircumferenceMismatchError, InvalidParameterError
from spatialpoll.geometry.circle import check_circumference, pairwise_distances, wrap
from spatialpoll.measures.configurations import Configuration, SignedConfiguration

# Largest negative round-off tolerated in ⟨ζ,ζ⟩ₐ before it is treated as a bug.
NEGATIVE_ENERGY_TOLERANCE = 1e-12

Kernel = Callable[[np.ndarray, float], np.ndarray]


def triangular_kernel(d: np.ndarray, a: float) -> np.ndarray:
    """(a − d)₊"""
    return np.maximum(a - d, 0.0)


@dataclass(frozen=True)
class EnergyParams:
    """Kernel width a on a circle of circumference ℓ, with 0 < a ≤ ℓ/2."""

    a: float
    circumference: float = 1.0

    def __post_init__(self):
        check_circumference(self.circumference)
        if not 0.0 < self.a <= self.circumference / 2.0:
            raise InvalidParameterError(
                f"Kernel width must satisfy 0 < a <= ℓ/2 = {self.circumference / 2.0}, "
                f"got {self.a}"
            )

    @classmethod
    def auto(cls, r: float, circumference: float = 1.0) -> "EnergyParams":
        """Widest kernel allowed by the scan radius: a = min(ℓ/2, 2r)."""
        if not r > 0:
            raise InvalidParameterError(f"Scan radius must be positive, got {r}")
        return cls(min(circumference / 2.0, 2.0 * r), circumference)

    def permits_scan_radius(self, r: float) -> bool:
        return self.a <= min(self.circumference / 2.0, 2.0 * r)

    @property
    def a_squared_normalized(self) -> float:
        """a²/ℓ, the mass of the kernel against the uniform probability measure."""
        return self.a * self.a / self.circumference


def _check_circle(p: EnergyParams, *measures: SignedConfiguration) -> None:
    for measure in measures:
        if measure.circumference != p.circumference:
            raise CircumferenceMismatchError(
                f"Measure lives on circumference {measure.circumference}, "
                f"energy parameters on {p.circumference}"
            )


def kernel_matrix(
    xs: np.ndarray, ys: np.ndarray, p: EnergyParams, kernel: Kernel = triangular_kernel
) -> np.ndarray:
    return kernel(pairwise_distances(xs, ys, p.circumference), p.a)


def inner_product(
    zeta: SignedConfiguration,
    eta: SignedConfiguration,
    p: EnergyParams,
    kernel: Kernel = triangular_kernel,
) -> float:
    """Bilinear form ⟨ζ,η⟩ₐ."""
    _check_circle(p, zeta, eta)
    if zeta.is_empty or eta.is_empty:
        return 0.0
    k = kernel_matrix(zeta.location_array(), eta.location_array(), p, kernel)
    return float(zeta.weight_array() @ k @ eta.weight_array())


def energy(zeta: SignedConfiguration, p: EnergyParams, kernel: Kernel = triangular_kernel) -> float:
    """h(ζ) = ⟨ζ,ζ⟩ₐ"""
    return inner_product(zeta, zeta, p, kernel)


def seminorm(zeta: SignedConfiguration, p: EnergyParams) -> float:
    """‖ζ‖ₐ = √⟨ζ,ζ⟩ₐ"""
    value = energy(zeta, p)
    if value < -NEGATIVE_ENERGY_TOLERANCE:
        raise ArithmeticError(f"Energy form returned negative value {value}")
    return math.sqrt(max(value, 0.0))


def _ball_counts(zeta: SignedConfiguration, points: np.ndarray, half_width: float) -> np.ndarray:
    inside = pairwise_distances(points, zeta.location_array(), zeta.circumference) < half_width
    return inside.astype(float) @ zeta.weight_array()


def ball_count_representation(
    zeta: SignedConfiguration, p: EnergyParams, grid_n: Optional[int] = None
) -> float:
    """
    ∫ ζ(B_{a/2}(u))² du over the circle, an independent evaluation of ⟨ζ,ζ⟩ₐ.

    The integrand is piecewise constant with breakpoints at x ± a/2. With grid_n=None the
    integral is taken cell by cell between breakpoints, which is exact; otherwise a uniform
    midpoint grid of grid_n cells is used.
    """
    _check_circle(p, zeta)
    if zeta.is_empty:
        return 0.0
    length = p.circumference
    half = p.a / 2.0

    if grid_n is None:
        cuts = {0.0, length}
        for x in zeta.locations:
            cuts.add(wrap(x - half, length))
            cuts.add(wrap(x + half, length))
        edges = np.array(sorted(cuts))
        widths = np.diff(edges)
        mids = edges[:-1] + widths / 2.0
        keep = widths > 0
        widths, mids = widths[keep], mids[keep]
    else:
        if grid_n < 1:
            raise InvalidParameterError(f"Grid size must be positive, got {grid_n}")
        widths = np.full(grid_n, length / grid_n)
        mids = (np.arange(grid_n) + 0.5) * length / grid_n

    counts = _ball_counts(zeta, mids, half)
    return float(np.sum(counts * counts * widths))


def norm_bounds_positive(zeta: Configuration, p: EnergyParams) -> Tuple[float, float]:
    """Two-sided bound (√(a/2)/(1+2/a))‖ζ‖ ≤ ‖ζ‖ₐ ≤ √a‖ζ‖ for positive configurations."""
    n = zeta.total_variation
    lower = math.sqrt(p.a / 2.0) / (1.0 + 2.0 / p.a) * n
    upper = math.sqrt(p.a) * n
    return lower, upper


def cluster_ball_count(zeta: Configuration, diameter: float) -> int:
    """Largest ζ(B) over closed arcs B of the given length."""
    if not diameter > 0:
        raise InvalidParameterError(f"Diameter must be positive, got {diameter}")
    if zeta.is_empty:
        return 0
    length = zeta.circumference
    if diameter >= length:
        return zeta.total_variation
    x = zeta.location_array()
    # an optimal closed arc can always be slid to start at an atom
    offsets = np.mod(x[None, :] - x[:, None], length)
    inside = offsets <= diameter
    return int((inside.astype(np.int64) @ np.asarray(zeta.counts, dtype=np.int64)).max())


def covering_ball_counts(zeta: Configuration, n: int) -> list[int]:
    """ζ([iℓ/n, (i+1)ℓ/n]) for the n closed arcs covering the circle."""
    if n < 1:
        raise InvalidParameterError(f"Need at least one covering arc, got {n}")
    length = zeta.circumference
    lo = np.arange(n) * length / n
    hi = (np.arange(n) + 1) * length / n
    x = zeta.location_array()
    w = np.asarray(zeta.counts, dtype=np.int64)
    if x.size == 0:
        return [0] * n
    member = (x[None, :] >= lo[:, None]) & (x[None, :] <= hi[:, None])
    # the last arc closes at ℓ, which is the point 0
    member[-1] |= x == 0.0
    return [int(v) for v in member.astype(np.int64) @ w]

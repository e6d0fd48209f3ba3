"""
Nearest-neighbour interpolation and the interpolation sums

    g(x,ζ) = Σ_y (a − d(x,y))₊ m(Γ_ζ(y))             (r absent)
    g(x,ζ) = Σ_y (a − d(x,y))₊ m(B_r(y) ∩ Γ_ζ(y))    (r present)

With atoms at x − a, x, x + a the first sum equals a²/ℓ exactly; for any ζ ∋ x and
a ≤ min(ℓ/2, 2r) the second is at least a²/ℓ.
"""

from __future__ import annotations

import bisect
from typing import Callable, Optional

import numpy as np

from spatialpoll.errors import CircumferenceMismatchError, InvalidParameterError
from spatialpoll.geometry.circle import (
    CirclePoint,
    cell_ball_measures,
    cell_measures,
    pairwise_distances,
)
from spatialpoll.lyapunov.energy import EnergyParams, triangular_kernel
from spatialpoll.measures.configurations import Configuration


def nn_interpolant(
    f: Callable[[CirclePoint], float], zeta: Configuration, z: CirclePoint
) -> float:
    """
    Value at z of the nearest-neighbour interpolant of f on the atoms of ζ.

    On a cell boundary the clockwise atom wins.
    """
    if zeta.is_empty:
        raise InvalidParameterError("Interpolant of an empty configuration is undefined")
    locations = zeta.locations
    length = zeta.circumference
    i = bisect.bisect_left(locations, z)
    if i < len(locations) and locations[i] == z:
        return f(z)
    right = locations[i % len(locations)]
    left = locations[i - 1]
    if (right - z) % length < (z - left) % length:
        return f(right)
    return f(left)


def interpolation_sum(
    x: CirclePoint, zeta: Configuration, p: EnergyParams, r: Optional[float] = None
) -> float:
    """g(x,ζ), restricted to scan balls when r is given."""
    if zeta.circumference != p.circumference:
        raise CircumferenceMismatchError(
            f"Configuration on circumference {zeta.circumference}, "
            f"energy parameters on {p.circumference}"
        )
    if zeta.is_empty:
        raise InvalidParameterError("Interpolation sum of an empty configuration is undefined")
    if r is None:
        weights = cell_measures(zeta)
    else:
        if not r > 0:
            raise InvalidParameterError(f"Scan radius must be positive, got {r}")
        if not p.permits_scan_radius(r):
            raise InvalidParameterError(
                f"Kernel width a={p.a} exceeds min(ℓ/2, 2r) = "
                f"{min(p.circumference / 2.0, 2.0 * r)}"
            )
        weights = cell_ball_measures(zeta, r)
    kern = triangular_kernel(
        pairwise_distances([x], zeta.locations, p.circumference)[0], p.a
    )
    return float(kern @ weights)


def interpolation_sums(zeta: Configuration, p: EnergyParams, r: float) -> np.ndarray:
    """g(y,ζ) with scan balls, for every distinct atom y of ζ at once."""
    weights = cell_ball_measures(zeta, r)
    x = zeta.location_array()
    return triangular_kernel(pairwise_distances(x, x, p.circumference), p.a) @ weights


def interpolation_target(p: EnergyParams) -> float:
    """a²/ℓ, the exact value of the unrestricted interpolation sum."""
    return p.a_squared_normalized

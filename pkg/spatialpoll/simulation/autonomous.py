"""
The scalar queue N_{t+1} = max(N_t + A_t − 1, 0), A_t ~ G_λ.

It is the spatial chain with r = ℓ/2, where every scan of a nonempty system serves someone.
"""

from __future__ import annotations

import numpy as np

from spatialpoll.errors import InvalidParameterError, UnstableSystemError
from spatialpoll.kernels.distributions import InterpollingDistribution
from spatialpoll.kernels.operators import SeedLike
from spatialpoll.simulation.regenerative import StationaryEstimate, regenerative_estimate


def autonomous_queue_path(
    lam: float,
    distribution: InterpollingDistribution,
    steps: int,
    seed: SeedLike,
    initial: int = 0,
) -> np.ndarray:
    """N_0..N_steps for any load."""
    if steps < 1:
        raise InvalidParameterError(f"Need at least one step, got {steps}")
    if lam < 0:
        raise InvalidParameterError(f"Arrival rate must be nonnegative, got {lam}")
    if initial < 0:
        raise InvalidParameterError(f"Initial queue length must be nonnegative, got {initial}")
    rng = np.random.default_rng(seed)
    batches = rng.poisson(lam * distribution.sample(rng, steps))
    walk = np.cumsum(batches - 1)
    # reflected walk: N_t = S_t − min(−N_0, min_{s≤t} S_s)
    path = walk - np.minimum(np.minimum.accumulate(walk), -initial)
    return np.concatenate(([initial], path)).astype(np.int64)


def autonomous_queue_oracle(
    lam: float, distribution: InterpollingDistribution, steps: int, seed: SeedLike
) -> StationaryEstimate:
    """Regenerative stationary estimate of the scalar queue started empty."""
    load = lam * distribution.s1
    if load >= 1.0:
        raise UnstableSystemError(f"Scalar queue has no stationary regime at load {load}")
    return regenerative_estimate(autonomous_queue_path(lam, distribution, steps, seed))

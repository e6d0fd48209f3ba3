"""
Interpolling time distributions G and the mixed Poisson law G_λ(n) of a batch.

Every distribution exposes its first two moments, a sampler, the pmf of the number of
arrivals during one interpolling time, its Laplace transform and moment-generating function.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple, Union

import numpy as np
from scipy import stats

from spatialpoll.errors import InvalidParameterError, SeriesTruncationError

logger = logging.getLogger(__name__)

# Largest arrival-series truncation level before giving up
MAX_TRUNCATION = 10**6

ArrayLike = Union[int, np.ndarray]


class DistributionKind(str, Enum):
    EXPONENTIAL = "exponential"
    DETERMINISTIC = "deterministic"
    GAMMA = "gamma"
    EMPIRICAL = "empirical"


@dataclass(frozen=True)
class InterpollingDistribution:
    """
    Distribution of the time between two polls.

    `mean` parameterizes the exponential, deterministic and gamma kinds, `shape` is the gamma
    shape, and `values` holds the equally weighted atoms of an empirical distribution.
    """

    kind: DistributionKind
    mean: float
    shape: float = 1.0
    values: Tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind is DistributionKind.EMPIRICAL:
            if not self.values:
                raise InvalidParameterError("Empirical distribution needs at least one value")
            if min(self.values) < 0:
                raise InvalidParameterError("Empirical interpolling times must be nonnegative")
        if not self.mean > 0:
            raise InvalidParameterError(f"Mean interpolling time must be positive, got {self.mean}")
        if not self.shape > 0:
            raise InvalidParameterError(f"Gamma shape must be positive, got {self.shape}")

    @classmethod
    def exponential(cls, mean: float) -> "InterpollingDistribution":
        return cls(DistributionKind.EXPONENTIAL, float(mean))

    @classmethod
    def deterministic(cls, value: float) -> "InterpollingDistribution":
        return cls(DistributionKind.DETERMINISTIC, float(value))

    @classmethod
    def gamma(cls, mean: float, shape: float) -> "InterpollingDistribution":
        return cls(DistributionKind.GAMMA, float(mean), shape=float(shape))

    @classmethod
    def empirical(cls, values) -> "InterpollingDistribution":
        values = tuple(float(v) for v in values)
        if not values:
            raise InvalidParameterError("Empirical distribution needs at least one value")
        return cls(DistributionKind.EMPIRICAL, float(np.mean(values)), values=values)

    @property
    def scale(self) -> float:
        """Gamma scale θ = mean/shape (the mean itself for the exponential)."""
        return self.mean / self.shape

    @property
    def s1(self) -> float:
        return self.mean

    @property
    def s2(self) -> float:
        if self.kind is DistributionKind.EXPONENTIAL:
            return 2.0 * self.mean**2
        if self.kind is DistributionKind.DETERMINISTIC:
            return self.mean**2
        if self.kind is DistributionKind.GAMMA:
            return self.shape * (self.shape + 1.0) * self.scale**2
        return float(np.mean(np.square(self.values)))

    @property
    def theta_max(self) -> float:
        """Supremum of the arguments at which E e^{θS} is finite."""
        if self.kind is DistributionKind.EXPONENTIAL:
            return 1.0 / self.mean
        if self.kind is DistributionKind.GAMMA:
            return 1.0 / self.scale
        return math.inf

    def sample(self, rng: np.random.Generator, size: Optional[int] = None) -> np.ndarray:
        if self.kind is DistributionKind.EXPONENTIAL:
            return rng.exponential(self.mean, size)
        if self.kind is DistributionKind.DETERMINISTIC:
            return np.full(size if size is not None else (), self.mean)
        if self.kind is DistributionKind.GAMMA:
            return rng.gamma(self.shape, self.scale, size)
        return rng.choice(np.asarray(self.values), size)

    def _mixture(self, lam: float):
        """The frozen scipy law of the batch size when it has a closed form."""
        if self.kind is DistributionKind.DETERMINISTIC:
            return stats.poisson(lam * self.mean)
        if self.kind in (DistributionKind.EXPONENTIAL, DistributionKind.GAMMA):
            shape = 1.0 if self.kind is DistributionKind.EXPONENTIAL else self.shape
            return stats.nbinom(shape, 1.0 / (1.0 + lam * self.scale))
        return None

    def mixed_poisson_pmf(self, lam: float, n: ArrayLike) -> Union[float, np.ndarray]:
        """G_λ(n) = ∫ e^{−λs}(λs)ⁿ/n! G(ds)"""
        if not lam > 0:
            raise InvalidParameterError(f"Arrival rate must be positive, got {lam}")
        if np.any(np.asarray(n) < 0):
            raise InvalidParameterError(f"Batch size must be nonnegative, got {n}")
        mixture = self._mixture(lam)
        if mixture is not None:
            out = mixture.pmf(n)
        else:
            means = lam * np.asarray(self.values)
            out = np.mean(stats.poisson.pmf(np.asarray(n)[..., None], means), axis=-1)
        return float(out) if np.ndim(out) == 0 else out

    def pmf_vector(self, lam: float, n_max: int) -> np.ndarray:
        """G_λ(0), ..., G_λ(n_max)"""
        return np.atleast_1d(self.mixed_poisson_pmf(lam, np.arange(n_max + 1)))

    def truncation_level(self, lam: float, tol: float) -> int:
        """Smallest N with Σ_{n>N} G_λ(n) < tol."""
        if not lam > 0:
            raise InvalidParameterError(f"Arrival rate must be positive, got {lam}")
        if not 0 < tol < 1:
            raise InvalidParameterError(f"Truncation tolerance must lie in (0, 1), got {tol}")

        if self.kind is DistributionKind.EXPONENTIAL:
            # geometric tail: P(N > n) = q^{n+1}
            q = lam * self.mean / (1.0 + lam * self.mean)
            level = int(math.floor(math.log(tol) / math.log(q)))
        elif self.kind is DistributionKind.EMPIRICAL:
            level = max(self._tail_level(stats.poisson(lam * v), tol) for v in set(self.values))
        else:
            level = self._tail_level(self._mixture(lam), tol)

        level = max(level, 0)
        if level > MAX_TRUNCATION:
            raise SeriesTruncationError(
                f"Arrival series needs {level} terms for tol={tol}, cap is {MAX_TRUNCATION}"
            )
        logger.debug(f"Truncating arrival series at N={level} (λ={lam}, tol={tol})")
        return level

    @staticmethod
    def _tail_level(law, tol: float) -> int:
        level = law.isf(tol)
        if not np.isfinite(level):
            return 0
        level = int(level)
        while law.sf(level) >= tol and level <= MAX_TRUNCATION:
            level += 1
        return level

    def laplace_transform(self, s: float) -> float:
        """Ĝ(s) = E e^{−sS} for s ≥ 0."""
        if s < 0:
            raise InvalidParameterError(f"Laplace transform needs s >= 0, got {s}")
        if self.kind is DistributionKind.EXPONENTIAL:
            return 1.0 / (1.0 + self.mean * s)
        if self.kind is DistributionKind.DETERMINISTIC:
            return math.exp(-s * self.mean)
        if self.kind is DistributionKind.GAMMA:
            return (1.0 + self.scale * s) ** (-self.shape)
        return float(np.mean(np.exp(-s * np.asarray(self.values))))

    def mgf(self, theta: float) -> float:
        """E e^{θS} for θ < theta_max."""
        if theta >= self.theta_max:
            raise InvalidParameterError(
                f"Moment-generating function diverges at θ={theta} >= {self.theta_max}"
            )
        if self.kind is DistributionKind.EXPONENTIAL:
            return 1.0 / (1.0 - self.mean * theta)
        if self.kind is DistributionKind.DETERMINISTIC:
            return math.exp(theta * self.mean)
        if self.kind is DistributionKind.GAMMA:
            return (1.0 - self.scale * theta) ** (-self.shape)
        return float(np.mean(np.exp(theta * np.asarray(self.values))))


def mixed_poisson_pmf(
    distribution: InterpollingDistribution, lam: float, n: ArrayLike
) -> Union[float, np.ndarray]:
    return distribution.mixed_poisson_pmf(lam, n)

"""Model parameters of the polling system."""

from __future__ import annotations

from dataclasses import dataclass

from spatialpoll.errors import InvalidParameterError
from spatialpoll.geometry.circle import ball_measure, check_circumference
from spatialpoll.kernels.distributions import InterpollingDistribution
from spatialpoll.lyapunov.energy import EnergyParams


@dataclass(frozen=True)
class SystemParams:
    """Arrival rate λ, scan radius r, circumference ℓ and interpolling distribution G."""

    arrival_rate: float
    scan_radius: float
    circumference: float
    distribution: InterpollingDistribution

    def __post_init__(self):
        if not self.arrival_rate > 0:
            raise InvalidParameterError(f"Arrival rate must be positive, got {self.arrival_rate}")
        if not self.scan_radius > 0:
            raise InvalidParameterError(f"Scan radius must be positive, got {self.scan_radius}")
        check_circumference(self.circumference)

    @property
    def load(self) -> float:
        """λs₁, the mean number of arrivals per polling cycle."""
        return self.arrival_rate * self.distribution.s1

    @property
    def is_stable(self) -> bool:
        return self.load < 1.0

    @property
    def scan_measure(self) -> float:
        """m(B_r)"""
        return ball_measure(self.scan_radius, self.circumference)

    @property
    def empty_batch_probability(self) -> float:
        """G_λ(0)"""
        return self.distribution.mixed_poisson_pmf(self.arrival_rate, 0)

    @property
    def time_average_offset(self) -> float:
        """λs₂/(2s₁), the mean number of arrivals since the last poll at a random time."""
        return self.arrival_rate * self.distribution.s2 / (2.0 * self.distribution.s1)

    def light_traffic_mean(self) -> float:
        """λs₁/m(B_r), the renewal approximation of the stationary population."""
        return self.load / self.scan_measure

    def default_energy_params(self) -> EnergyParams:
        return EnergyParams.auto(self.scan_radius, self.circumference)

    def with_radius(self, scan_radius: float) -> "SystemParams":
        return SystemParams(self.arrival_rate, scan_radius, self.circumference, self.distribution)

    def with_arrival_rate(self, arrival_rate: float) -> "SystemParams":
        return SystemParams(arrival_rate, self.scan_radius, self.circumference, self.distribution)

"""Configuration management for spatialpoll."""

import logging
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from spatialpoll.errors import ConfigurationError
from spatialpoll.kernels.distributions import InterpollingDistribution
from spatialpoll.kernels.params import SystemParams
from spatialpoll.lyapunov.energy import EnergyParams

logger = logging.getLogger(__name__)


class ScenarioConfig(BaseModel):
    """One experiment scenario: model parameters, run lengths and output settings."""

    model_config = ConfigDict(extra="forbid")

    scenario: str = "default"

    # model
    arrival_rate: float = Field(0.1, gt=0)
    scan_radius: float = Field(0.1, gt=0)
    circumference: float = Field(1.0, gt=0)
    distribution: Literal["exponential", "deterministic", "gamma", "empirical"] = "exponential"
    mean_interpolling: float = Field(1.0, gt=0)
    gamma_shape: float = Field(2.0, gt=0)
    empirical_values: List[float] = Field(default_factory=list)
    kernel_width: Union[float, Literal["auto"]] = "auto"  # auto = min(ℓ/2, 2r)

    # run lengths
    steps: int = Field(100_000, ge=1)
    replications: int = Field(10_000, ge=1)
    min_cycles: int = Field(1_000, ge=2)
    max_steps: int = Field(1_000_000, ge=1)
    corpus_size: int = Field(10_000, ge=1)
    inner_samples: int = Field(64, ge=2)

    # sweeps
    arrival_rates: List[float] = Field(default_factory=lambda: [0.5, 0.8, 0.95, 1.0, 1.1, 1.2])
    radii: List[float] = Field(default_factory=lambda: [0.02, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5])
    thetas: List[float] = Field(default_factory=lambda: [0.5, 1.0, 2.0])

    # execution
    seed: int = Field(12345, ge=0)
    out_dir: str = "results"
    threads: int = Field(1, ge=1)

    @model_validator(mode="after")
    def _check_consistency(self) -> "ScenarioConfig":
        if self.distribution == "empirical" and not self.empirical_values:
            raise ValueError("empirical distribution needs empirical_values")
        if isinstance(self.kernel_width, float) and not self.kernel_width > 0:
            raise ValueError("kernel_width must be positive or 'auto'")
        if any(r <= 0 for r in self.radii) or any(lam <= 0 for lam in self.arrival_rates):
            raise ValueError("sweep radii and arrival rates must be positive")
        return self

    def interpolling_distribution(self) -> InterpollingDistribution:
        if self.distribution == "exponential":
            return InterpollingDistribution.exponential(self.mean_interpolling)
        if self.distribution == "deterministic":
            return InterpollingDistribution.deterministic(self.mean_interpolling)
        if self.distribution == "gamma":
            return InterpollingDistribution.gamma(self.mean_interpolling, self.gamma_shape)
        return InterpollingDistribution.empirical(self.empirical_values)

    def system_params(self) -> SystemParams:
        return SystemParams(
            arrival_rate=self.arrival_rate,
            scan_radius=self.scan_radius,
            circumference=self.circumference,
            distribution=self.interpolling_distribution(),
        )

    def energy_params(self) -> EnergyParams:
        if self.kernel_width == "auto":
            return EnergyParams.auto(self.scan_radius, self.circumference)
        return EnergyParams(float(self.kernel_width), self.circumference)

    def to_canonical_text(self) -> str:
        """Sorted flat YAML; parsing it back gives an equal config."""
        return yaml.safe_dump(
            self.model_dump(mode="json"), sort_keys=True, default_flow_style=None
        )

    @classmethod
    def from_mapping(cls, data: Optional[Dict[str, Any]]) -> "ScenarioConfig":
        try:
            return cls(**(data or {}))
        except ValidationError as e:
            raise ConfigurationError(f"Invalid scenario configuration: {e}") from e

    @classmethod
    def from_text(cls, text: str) -> "ScenarioConfig":
        try:
            data = yaml.safe_load(text)
        except yaml.YAMLError as e:
            raise ConfigurationError(f"Configuration is not valid YAML: {e}") from e
        if data is not None and not isinstance(data, dict):
            raise ConfigurationError("Configuration must be a flat key-value mapping")
        return cls.from_mapping(data)

    def with_overrides(self, overrides: Dict[str, Any]) -> "ScenarioConfig":
        """Merge command-line overrides over this config; None values are ignored."""
        merged = self.model_dump()
        merged.update({key: value for key, value in overrides.items() if value is not None})
        return ScenarioConfig.from_mapping(merged)


class ConfigManager:
    """Configuration manager."""

    def __init__(self, config_path: str = "config.yaml"):
        self.config_path = Path(config_path)
        self._config: Optional[ScenarioConfig] = None

    def load(self) -> ScenarioConfig:
        """Load the scenario from its YAML file."""
        if not self.config_path.exists():
            raise ConfigurationError(f"Configuration file not found: {self.config_path}")

        with open(self.config_path, "r") as f:
            self._config = ScenarioConfig.from_text(f.read())

        logger.debug(f"Loaded scenario '{self._config.scenario}' from {self.config_path}")
        return self._config

    @property
    def config(self) -> ScenarioConfig:
        """Get configuration, loading if necessary."""
        if self._config is None:
            self.load()
        return self._config


# Global config manager instance
config_manager = ConfigManager()


def get_config() -> ScenarioConfig:
    """Get the global configuration."""
    return config_manager.config

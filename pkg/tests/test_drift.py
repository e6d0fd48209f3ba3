"""
Unit tests for drift evaluation and its Monte Carlo cross-checks.
"""

import math

import pytest

from spatialpoll.errors import CircumferenceMismatchError, InvalidParameterError
from spatialpoll.kernels.distributions import InterpollingDistribution
from spatialpoll.kernels.drift import (
    energy_drift,
    population_drift,
    population_drift_lower_bound,
    seminorm_drift,
)
from spatialpoll.kernels.functionals import EnergyFunctional, PopulationFunctional
from spatialpoll.kernels.params import SystemParams
from spatialpoll.lyapunov.drift_constants import drift_constants, seminorm_drift_constants
from spatialpoll.lyapunov.energy import EnergyParams
from spatialpoll.measures.configurations import Configuration
from spatialpoll.simulation.monte_carlo import drift_monte_carlo, sample_arrival_functional


@pytest.fixture
def p():
    return EnergyParams(0.2)


class TestEnergyDrift:
    """Test suite for Dh with h = ⟨·,·⟩ₐ."""

    @pytest.mark.parametrize(
        "zeta",
        [
            Configuration.empty(),
            Configuration.cluster(0.3, 20),
            Configuration.from_locations([0.1 * i for i in range(10)]),
            Configuration.from_atoms([(0.1, 15), (0.6, 15)]),
        ],
    )
    def test_quadratic_bound(self, zeta, moderate_params, p):
        """Test Dh ≤ −c₁‖ζ‖ + c₂ with nonnegative slack."""
        evaluation = energy_drift(zeta, moderate_params, p, inner_samples=64, seed=0)
        constants = drift_constants(0.5, 1.0, 2.0, p)
        assert evaluation.bound == pytest.approx(constants.bound(zeta.total_variation))
        assert evaluation.slack >= 0
        assert evaluation.respects_bound

    def test_large_cluster_drifts_down(self, moderate_params, p):
        """Test the drift is negative far from empty."""
        evaluation = energy_drift(Configuration.cluster(0.5, 100), moderate_params, p, seed=1)
        assert evaluation.value < 0

    def test_preconditions(self, moderate_params):
        """Test a > 2r and mismatched circles are rejected."""
        zeta = Configuration.cluster(0.5, 3)
        with pytest.raises(InvalidParameterError):
            energy_drift(zeta, moderate_params, EnergyParams(0.4))
        with pytest.raises(CircumferenceMismatchError):
            energy_drift(zeta, moderate_params, EnergyParams(0.2, 2.0))

    @pytest.mark.slow
    def test_matches_monte_carlo(self, moderate_params, p):
        """Test the operator evaluation against brute-force one-step transitions."""
        zeta = Configuration.from_locations([0.1, 0.15, 0.5, 0.8])
        exact = energy_drift(zeta, moderate_params, p, inner_samples=2000, seed=2)
        sampled = drift_monte_carlo(zeta, moderate_params, EnergyFunctional(p), 40_000, seed=3)
        spread = 4.0 * math.hypot(exact.stderr, sampled.stderr)
        assert abs(exact.value - sampled.value) <= spread + 1e-9


class TestPopulationDrift:
    """Test suite for the population drift and its lower bound."""

    def test_counterexample(self):
        """Test 100δ₀ drifts upward at λ=0.95, deterministic s₁=1, r=0.05."""
        params = SystemParams(0.95, 0.05, 1.0, InterpollingDistribution.deterministic(1.0))
        zeta = Configuration.cluster(0.0, 100)
        lower = population_drift_lower_bound(zeta, params)
        assert lower == pytest.approx(-0.05 + math.exp(-0.95) * 0.9)
        estimate = population_drift(zeta, params, inner_samples=64, seed=4)
        assert estimate.value >= lower - 1e-12
        assert estimate.value > 0

    def test_spread_configuration(self, moderate_params):
        """Test spread-out customers are found often enough to drift down."""
        zeta = Configuration.from_locations([0.1 * i for i in range(10)])
        assert population_drift(zeta, moderate_params, seed=5).value < 0

    def test_matches_monte_carlo(self, moderate_params):
        """Test against brute-force one-step transitions."""
        zeta = Configuration.from_locations([0.2, 0.7])
        exact = population_drift(zeta, moderate_params, inner_samples=512, seed=6)
        sampled = drift_monte_carlo(zeta, moderate_params, PopulationFunctional(), 20_000, seed=7)
        assert abs(exact.value - sampled.value) <= 4.0 * math.hypot(exact.stderr, sampled.stderr)


class TestSeminormDrift:
    """Test suite for D‖·‖ₐ."""

    def test_negative_past_threshold(self, moderate_params, p):
        """Test Dv ≤ −alpha once ‖ζ‖ reaches the threshold."""
        constants = seminorm_drift_constants(0.5, 1.0, 2.0, p)
        zeta = Configuration.cluster(0.3, constants.threshold)
        estimate = seminorm_drift(zeta, moderate_params, p, inner_samples=128, seed=8)
        assert estimate.value <= -constants.alpha + 4.0 * estimate.stderr + 1e-9

    def test_bounded_everywhere(self, moderate_params, p):
        """Test Dv ≤ b near empty."""
        constants = seminorm_drift_constants(0.5, 1.0, 2.0, p)
        estimate = seminorm_drift(Configuration.empty(), moderate_params, p, seed=9)
        assert estimate.value <= constants.b + 4.0 * estimate.stderr + 1e-9


class TestMonteCarlo:
    """Test suite for brute-force estimators."""

    def test_replication_floor(self, light_params):
        """Test fewer than 1000 replications are refused."""
        zeta = Configuration.cluster(0.5, 2)
        with pytest.raises(InvalidParameterError):
            drift_monte_carlo(zeta, light_params, PopulationFunctional(), 999, seed=0)
        with pytest.raises(InvalidParameterError):
            sample_arrival_functional(PopulationFunctional(), zeta, light_params, 10, seed=0)

    def test_arrival_functional(self, light_params):
        """Test sampled Aₐ‖·‖ against ‖ζ‖ + λs₁."""
        zeta = Configuration.cluster(0.5, 2)
        estimate = sample_arrival_functional(
            PopulationFunctional(), zeta, light_params, 20_000, seed=1
        )
        assert estimate.within(2.1)

    def test_reproducible(self, light_params):
        """Test equal seeds give equal estimates."""
        zeta = Configuration.cluster(0.5, 2)
        a = drift_monte_carlo(zeta, light_params, PopulationFunctional(), 1000, seed=2)
        b = drift_monte_carlo(zeta, light_params, PopulationFunctional(), 1000, seed=2)
        assert a == b

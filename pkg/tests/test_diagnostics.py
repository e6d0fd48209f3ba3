"""
Unit tests for steady-state diagnostics.
"""

import math

import numpy as np
import pytest

from spatialpoll.errors import InsufficientDataError, InvalidParameterError, UnstableSystemError
from spatialpoll.experiments.commands.steady_state import LAPLACE_SIGMAS
from spatialpoll.kernels.distributions import InterpollingDistribution
from spatialpoll.kernels.params import SystemParams
from spatialpoll.simulation.diagnostics import laplace_residual, tail_geometric_fit
from spatialpoll.simulation.paths import collect_laplace_sample
from spatialpoll.simulation.regenerative import StationaryEstimate, stationary_estimate


@pytest.fixture(scope="module", params=[0.1, 0.5], ids=["lambda_0.1", "lambda_0.5"])
def stationary_run(request):
    """Pre-poll states of a 10⁶-poll run with exponential G, r=0.1, ℓ=1."""
    params = SystemParams(request.param, 0.1, 1.0, InterpollingDistribution.exponential(1.0))
    return params, collect_laplace_sample(params, 1_000_000, seed=12)


def histogram_estimate(histogram) -> StationaryEstimate:
    return StationaryEstimate(
        mean_population=1.0,
        half_width_95=None,
        cycles=10,
        cycle_length_mean=1.0,
        tail_histogram=np.asarray(histogram),
    )


class TestLaplaceResidual:
    """Test suite for the Laplace functional residual."""

    @pytest.mark.parametrize("theta", [0.0, -1.0, math.inf])
    def test_invalid_theta(self, light_params, theta):
        """Test θ must be positive and finite."""
        with pytest.raises(InvalidParameterError):
            laplace_residual(light_params, theta, [(0, 0.0)] * 30)

    def test_constant_states(self, light_params):
        """Test the residual of a repeated state equals the per-state term exactly."""
        theta = 0.5
        residual = laplace_residual(light_params, theta, [(2, 0.4)] * 60)
        transform = light_params.distribution.laplace_transform(0.1 * (1 - math.exp(-theta)))
        expected = math.exp(-2 * theta) * (1 - transform * (1 + math.expm1(theta) * 0.4))
        assert residual.value == pytest.approx(expected)
        assert residual.stderr == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.slow
    @pytest.mark.parametrize("theta", [0.5, 1.0, 2.0])
    def test_stationary_sample(self, stationary_run, theta):
        """Test the identity holds within 3 standard errors on a 10⁶-poll run."""
        params, sample = stationary_run
        residual = laplace_residual(params, theta, sample)
        assert abs(residual.value) <= LAPLACE_SIGMAS * residual.stderr + 1e-12


class TestTailFit:
    """Test suite for the geometric tail fit."""

    def test_geometric_histogram(self):
        """Test an exactly geometric histogram gives rate log ρ."""
        histogram = np.round(1e6 * 0.5 ** np.arange(16))
        fit = tail_geometric_fit(histogram_estimate(histogram))
        assert fit.rate == pytest.approx(math.log(0.5), abs=0.01)
        assert fit.r_squared > 0.999
        assert list(fit.to_frame().columns) == ["k", "log_survival"]
        assert fit.levels[0] == 1

    def test_sparse_levels_dropped(self):
        """Test levels k with fewer than ten states at or above k are left out."""
        histogram = [1000, 500, 250, 125, 60, 30, 15, 5, 2, 1]
        fit = tail_geometric_fit(histogram_estimate(histogram))
        assert fit.levels.max() == 6

    def test_insufficient_data(self):
        """Test two tail levels are not enough."""
        with pytest.raises(InsufficientDataError, match="insufficient tail data"):
            tail_geometric_fit(histogram_estimate([100, 50, 25]))

    @pytest.mark.slow
    def test_stationary_tail(self, moderate_params):
        """Test the simulated tail at λs₁ = 0.5 is close to geometric."""
        estimate = stationary_estimate(moderate_params, 5000, 10**6, seed=13)
        fit = tail_geometric_fit(estimate)
        assert fit.rate < 0
        assert fit.r_squared >= 0.95

    def test_unstable_has_no_tail(self, moderate_params):
        """Test unstable parameters never reach the fit."""
        with pytest.raises(UnstableSystemError):
            stationary_estimate(moderate_params.with_arrival_rate(1.5), 10, 100, seed=0)

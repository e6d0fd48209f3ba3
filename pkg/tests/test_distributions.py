"""
Unit tests for interpolling distributions and system parameters.
"""

import math

import numpy as np
import pytest
from scipy import integrate, stats

from spatialpoll.errors import InvalidParameterError, SeriesTruncationError
from spatialpoll.kernels.distributions import DistributionKind, InterpollingDistribution
from spatialpoll.kernels.params import SystemParams


class TestMoments:
    """Test suite for s₁, s₂ and the moment-generating range."""

    @pytest.mark.parametrize(
        "distribution,s1,s2",
        [
            (InterpollingDistribution.exponential(2.0), 2.0, 8.0),
            (InterpollingDistribution.deterministic(0.5), 0.5, 0.25),
            (InterpollingDistribution.gamma(2.0, 4.0), 2.0, 5.0),
            (InterpollingDistribution.empirical([1.0, 3.0]), 2.0, 5.0),
        ],
    )
    def test_first_two_moments(self, distribution, s1, s2):
        """Test s₁ and s₂ per kind."""
        assert distribution.s1 == pytest.approx(s1)
        assert distribution.s2 == pytest.approx(s2)

    def test_theta_max(self):
        """Test where E e^{θS} stops being finite."""
        assert InterpollingDistribution.exponential(2.0).theta_max == 0.5
        assert InterpollingDistribution.gamma(2.0, 4.0).theta_max == 2.0
        assert InterpollingDistribution.deterministic(1.0).theta_max == math.inf

    def test_kind(self):
        """Test constructors tag their kind."""
        assert InterpollingDistribution.gamma(1.0, 2.0).kind is DistributionKind.GAMMA


class TestMixedPoisson:
    """Test suite for G_λ(n)."""

    def test_geometric_for_exponential(self):
        """Test G_λ(n) = (1/(1+λs₁))(λs₁/(1+λs₁))ⁿ."""
        g = InterpollingDistribution.exponential(1.0)
        assert g.mixed_poisson_pmf(0.5, 0) == pytest.approx(2.0 / 3.0)
        assert g.mixed_poisson_pmf(0.5, 1) == pytest.approx(2.0 / 9.0)

    def test_poisson_for_deterministic(self):
        """Test G_λ = Poisson(λs) when S ≡ s."""
        g = InterpollingDistribution.deterministic(2.0)
        np.testing.assert_allclose(g.pmf_vector(0.3, 5), stats.poisson.pmf(np.arange(6), 0.6))

    @pytest.mark.parametrize(
        "distribution,pdf",
        [
            (InterpollingDistribution.exponential(1.5), stats.expon(scale=1.5).pdf),
            (InterpollingDistribution.gamma(2.0, 3.0), stats.gamma(3.0, scale=2.0 / 3.0).pdf),
        ],
    )
    def test_matches_quadrature(self, distribution, pdf):
        """Test the closed forms against ∫ e^{−λs}(λs)ⁿ/n! G(ds)."""
        lam = 0.7
        for n in range(6):
            expected, _ = integrate.quad(
                lambda s: stats.poisson.pmf(n, lam * s) * pdf(s), 0.0, np.inf
            )
            assert distribution.mixed_poisson_pmf(lam, n) == pytest.approx(expected, rel=1e-6)

    def test_empirical_mixture(self):
        """Test the empirical law averages Poisson pmfs."""
        g = InterpollingDistribution.empirical([1.0, 3.0])
        expected = 0.5 * (stats.poisson.pmf(2, 0.5) + stats.poisson.pmf(2, 1.5))
        assert g.mixed_poisson_pmf(0.5, 2) == pytest.approx(expected)

    @pytest.mark.parametrize(
        "distribution",
        [
            InterpollingDistribution.exponential(1.0),
            InterpollingDistribution.deterministic(1.0),
            InterpollingDistribution.gamma(1.0, 0.5),
            InterpollingDistribution.empirical([0.2, 1.0, 4.0]),
        ],
    )
    def test_truncation_level(self, distribution):
        """Test Σ_{n>N} G_λ(n) < tol at the returned level."""
        tol = 1e-8
        level = distribution.truncation_level(0.9, tol)
        assert 1.0 - distribution.pmf_vector(0.9, level).sum() < tol + 1e-14

    def test_truncation_cap(self):
        """Test enormous batches are refused."""
        with pytest.raises(SeriesTruncationError):
            InterpollingDistribution.deterministic(1.0).truncation_level(1e7, 1e-10)

    def test_invalid_arguments(self):
        """Test non-positive rates, negative sizes and bad tolerances."""
        g = InterpollingDistribution.exponential(1.0)
        with pytest.raises(InvalidParameterError):
            g.mixed_poisson_pmf(0.0, 1)
        with pytest.raises(InvalidParameterError):
            g.mixed_poisson_pmf(0.5, -1)
        with pytest.raises(InvalidParameterError):
            g.truncation_level(0.5, 1.5)


class TestTransforms:
    """Test suite for the Laplace transform and the moment-generating function."""

    def test_laplace_transform(self):
        """Test Ĝ(s) per kind."""
        assert InterpollingDistribution.exponential(2.0).laplace_transform(1.0) == pytest.approx(
            1.0 / 3.0
        )
        assert InterpollingDistribution.deterministic(2.0).laplace_transform(
            0.5
        ) == pytest.approx(math.exp(-1.0))
        assert InterpollingDistribution.gamma(2.0, 2.0).laplace_transform(1.0) == pytest.approx(
            0.25
        )
        with pytest.raises(InvalidParameterError):
            InterpollingDistribution.exponential(1.0).laplace_transform(-1.0)

    def test_mgf(self):
        """Test E e^{θS} and its divergence."""
        g = InterpollingDistribution.exponential(2.0)
        assert g.mgf(0.25) == pytest.approx(2.0)
        with pytest.raises(InvalidParameterError):
            g.mgf(0.5)
        assert InterpollingDistribution.deterministic(1.0).mgf(3.0) == pytest.approx(math.exp(3))


class TestSampling:
    """Test suite for seeded sampling."""

    def test_reproducible(self):
        """Test equal seeds give equal samples."""
        g = InterpollingDistribution.gamma(1.0, 2.0)
        a = g.sample(np.random.default_rng(7), 100)
        b = g.sample(np.random.default_rng(7), 100)
        np.testing.assert_array_equal(a, b)

    def test_sample_mean(self):
        """Test the empirical mean approaches s₁."""
        g = InterpollingDistribution.exponential(1.0)
        assert g.sample(np.random.default_rng(1), 100_000).mean() == pytest.approx(1.0, abs=0.02)

    def test_deterministic_sample(self):
        """Test a deterministic law samples its value."""
        g = InterpollingDistribution.deterministic(0.7)
        assert np.all(g.sample(np.random.default_rng(0), 5) == 0.7)


class TestValidation:
    """Test suite for constructor validation."""

    def test_invalid_distributions(self):
        """Test non-positive means, shapes and empty or negative empirical values."""
        with pytest.raises(InvalidParameterError):
            InterpollingDistribution.exponential(0.0)
        with pytest.raises(InvalidParameterError):
            InterpollingDistribution.gamma(1.0, 0.0)
        with pytest.raises(InvalidParameterError):
            InterpollingDistribution.empirical([])
        with pytest.raises(InvalidParameterError):
            InterpollingDistribution.empirical([1.0, -1.0])


class TestSystemParams:
    """Test suite for the model parameters."""

    def test_derived_quantities(self, light_params):
        """Test load, scan measure and the light-traffic mean."""
        assert light_params.load == pytest.approx(0.1)
        assert light_params.is_stable
        assert light_params.scan_measure == pytest.approx(0.2)
        assert light_params.light_traffic_mean() == pytest.approx(0.5)
        assert light_params.empty_batch_probability == pytest.approx(1.0 / 1.1)

    def test_time_average_offset(self, light_params):
        """Test λs₂/(2s₁) for exponential and deterministic interpolling times."""
        assert light_params.time_average_offset == pytest.approx(0.1)
        g = InterpollingDistribution.deterministic(2.0)
        assert SystemParams(0.3, 0.1, 1.0, g).time_average_offset == pytest.approx(0.3)

    def test_default_energy_params(self, light_params):
        """Test a = min(ℓ/2, 2r)."""
        assert light_params.default_energy_params().a == pytest.approx(0.2)

    def test_copies(self, light_params):
        """Test with_radius and with_arrival_rate leave the rest unchanged."""
        wide = light_params.with_radius(0.5)
        assert wide.scan_measure == 1.0
        assert wide.arrival_rate == light_params.arrival_rate
        fast = light_params.with_arrival_rate(1.2)
        assert not fast.is_stable
        assert fast.scan_radius == light_params.scan_radius

    def test_validation(self):
        """Test non-positive rates and radii are rejected."""
        g = InterpollingDistribution.exponential(1.0)
        with pytest.raises(InvalidParameterError):
            SystemParams(0.0, 0.1, 1.0, g)
        with pytest.raises(InvalidParameterError):
            SystemParams(0.1, -0.1, 1.0, g)
        with pytest.raises(InvalidParameterError):
            SystemParams(0.1, 0.1, 0.0, g)

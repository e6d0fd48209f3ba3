"""
Unit tests for the energy form and its seminorm.
"""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spatialpoll.errors import CircumferenceMismatchError, InvalidParameterError
from spatialpoll.lyapunov.energy import (
    EnergyParams,
    ball_count_representation,
    cluster_ball_count,
    covering_ball_counts,
    energy,
    inner_product,
    norm_bounds_positive,
    seminorm,
)
from spatialpoll.measures.configurations import Configuration, SignedConfiguration
from tests.strategies import configurations, signed_configurations

widths = st.floats(min_value=0.01, max_value=0.5)


class TestEnergyParams:
    """Test suite for kernel-width parameters."""

    def test_width_bounds(self):
        """Test 0 < a ≤ ℓ/2."""
        assert EnergyParams(0.5, 1.0).a == 0.5
        with pytest.raises(InvalidParameterError):
            EnergyParams(0.6, 1.0)
        with pytest.raises(InvalidParameterError):
            EnergyParams(0.0, 1.0)

    def test_auto_width(self):
        """Test a = min(ℓ/2, 2r)."""
        assert EnergyParams.auto(0.1).a == pytest.approx(0.2)
        assert EnergyParams.auto(0.4).a == 0.5
        assert EnergyParams.auto(0.4, 4.0).a == pytest.approx(0.8)

    def test_permits_scan_radius(self):
        """Test the a ≤ min(ℓ/2, 2r) precondition."""
        p = EnergyParams(0.2)
        assert p.permits_scan_radius(0.1)
        assert not p.permits_scan_radius(0.05)

    def test_normalized_square(self):
        """Test a²/ℓ."""
        assert EnergyParams(0.2, 2.0).a_squared_normalized == pytest.approx(0.02)


class TestEnergyForm:
    """Test suite for ⟨·,·⟩ₐ and ‖·‖ₐ."""

    @pytest.fixture
    def p(self):
        return EnergyParams(0.2)

    def test_inner_product_of_two_atoms(self, p):
        """Test ⟨δ_0, δ_0.1⟩ = a − d."""
        x = Configuration.from_locations([0.0])
        y = Configuration.from_locations([0.1])
        assert inner_product(x, y, p) == pytest.approx(0.1)
        assert inner_product(x, Configuration.from_locations([0.5]), p) == 0.0

    def test_energy_of_pair(self, p):
        """Test h(δ_0 + δ_0.1) = 2a + 2(a − d)."""
        zeta = Configuration.from_locations([0.0, 0.1])
        assert energy(zeta, p) == pytest.approx(0.6)

    def test_energy_wraps_around_zero(self, p):
        """Test atoms either side of 0 interact."""
        zeta = Configuration.from_locations([0.95, 0.05])
        assert energy(zeta, p) == pytest.approx(0.4 + 2 * 0.1)

    def test_cluster_energy(self, p):
        """Test h(nδ_x) = a n²."""
        assert energy(Configuration.cluster(0.3, 7), p) == pytest.approx(0.2 * 49)
        assert seminorm(Configuration.cluster(0.3, 7), p) == pytest.approx(math.sqrt(0.2) * 7)

    def test_empty_energy(self, p):
        """Test the zero measure has zero energy."""
        assert energy(Configuration.empty(), p) == 0.0

    def test_circumference_mismatch(self, p):
        """Test measures must live on the kernel's circle."""
        with pytest.raises(CircumferenceMismatchError):
            energy(Configuration.from_locations([0.1], 2.0), p)

    @settings(max_examples=200)
    @given(signed_configurations(), widths)
    def test_positive_semidefinite(self, eta, a):
        """Test ⟨η,η⟩ₐ ≥ 0 on signed measures."""
        assert energy(eta, EnergyParams(a)) >= -1e-12

    @settings(max_examples=200)
    @given(signed_configurations(), widths)
    def test_ball_count_representation(self, eta, a):
        """Test ⟨η,η⟩ₐ = ∫ η(B_{a/2}(u))² du."""
        p = EnergyParams(a)
        assert ball_count_representation(eta, p) == pytest.approx(energy(eta, p), abs=1e-9)

    def test_ball_count_grid_converges(self, p):
        """Test the midpoint-grid integral approaches the exact one."""
        eta = SignedConfiguration.from_atoms([(0.1, 1), (0.2, 1), (0.5, -1)])
        exact = ball_count_representation(eta, p)
        assert ball_count_representation(eta, p, grid_n=20_000) == pytest.approx(exact, abs=2e-3)
        with pytest.raises(InvalidParameterError):
            ball_count_representation(eta, p, grid_n=0)

    @settings(max_examples=200)
    @given(signed_configurations(), signed_configurations(), widths)
    def test_triangle_inequality(self, zeta, eta, a):
        """Test ‖ζ + η‖ₐ ≤ ‖ζ‖ₐ + ‖η‖ₐ."""
        p = EnergyParams(a)
        assert seminorm(zeta + eta, p) <= seminorm(zeta, p) + seminorm(eta, p) + 1e-9

    @given(signed_configurations(), widths)
    def test_upper_bound(self, eta, a):
        """Test ‖η‖ₐ ≤ √a‖η‖, hence ≤ ‖η‖ on the unit circle."""
        value = seminorm(eta, EnergyParams(a))
        assert value <= math.sqrt(a) * eta.total_variation + 1e-9
        assert value <= eta.total_variation + 1e-9

    @settings(max_examples=200)
    @given(configurations(), widths)
    def test_two_sided_bound_for_positive(self, zeta, a):
        """Test (√(a/2)/(1+2/a))‖ζ‖ ≤ ‖ζ‖ₐ ≤ √a‖ζ‖."""
        p = EnergyParams(a)
        lower, upper = norm_bounds_positive(zeta, p)
        assert lower - 1e-9 <= seminorm(zeta, p) <= upper + 1e-9


class TestClusterBalls:
    """Test suite for cluster-ball counts."""

    def test_cluster_ball_count(self):
        """Test the best closed arc of a given length."""
        zeta = Configuration.from_locations([0.1, 0.15, 0.5])
        assert cluster_ball_count(zeta, 0.1) == 2
        assert cluster_ball_count(zeta, 1.0) == 3

    def test_cluster_ball_wraps(self):
        """Test arcs through 0 are considered."""
        zeta = Configuration.from_atoms([(0.95, 2), (0.02, 1), (0.5, 1)])
        assert cluster_ball_count(zeta, 0.1) == 3

    def test_closed_covering_arcs(self):
        """Test endpoints belong to both adjacent covering arcs."""
        zeta = Configuration.from_locations([0.0, 0.5])
        assert covering_ball_counts(zeta, 2) == [2, 2]
        assert covering_ball_counts(Configuration.empty(), 3) == [0, 0, 0]

    @given(configurations(max_size=30), st.integers(min_value=1, max_value=10))
    def test_pigeonhole(self, zeta, n):
        """Test some covering arc holds at least ‖ζ‖/n customers."""
        counts = covering_ball_counts(zeta, n)
        assert max(counts) * n >= zeta.total_variation
        assert cluster_ball_count(zeta, 1.0 / n + 1e-9) >= max(counts)

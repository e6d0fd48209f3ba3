"""
Unit tests for the polling operator.
"""

import numpy as np
import pytest
from scipy import stats

from spatialpoll.kernels.distributions import InterpollingDistribution
from spatialpoll.kernels.functionals import PopulationFunctional
from spatialpoll.kernels.params import SystemParams
from spatialpoll.kernels.polling import (
    apply_polling_operator,
    poll_index,
    poll_outcome_distribution,
    sample_poll,
)
from spatialpoll.measures.configurations import Configuration
from spatialpoll.simulation.chain import PollingChain
from spatialpoll.simulation.paths import draw_stream


class TestPollIndex:
    """Test suite for the atom served by one scan."""

    def test_nearest_within_radius(self):
        """Test the nearest atom is served when closer than r."""
        assert poll_index([0.1, 0.4, 0.7], 0.45, 0.1, 1.0) == 1
        assert poll_index([0.1, 0.4, 0.7], 0.55, 0.1, 1.0) is None

    def test_open_ball(self):
        """Test an atom at distance exactly r is not served."""
        assert poll_index([0.5], 0.25, 0.25, 1.0) is None

    def test_wraps_around_zero(self):
        """Test the bracketing atoms are found across 0."""
        assert poll_index([0.1, 0.9], 0.98, 0.2, 1.0) == 1
        assert poll_index([0.1, 0.9], 0.02, 0.2, 1.0) == 0

    def test_tie_break(self):
        """Test an exact tie follows the tie draw."""
        assert poll_index([0.25, 0.75], 0.5, 0.3, 1.0, tie_draw=0.1) == 0
        assert poll_index([0.25, 0.75], 0.5, 0.3, 1.0, tie_draw=0.9) == 1

    def test_empty_and_single(self):
        """Test no atoms and one atom."""
        assert poll_index([], 0.5, 0.3, 1.0) is None
        assert poll_index([0.3], 0.9, 0.5, 1.0) == 0


class TestPollOutcomeDistribution:
    """Test suite for the exact law after one poll."""

    @pytest.fixture
    def zeta(self):
        return Configuration.from_locations([0.125, 0.375, 0.75])

    def test_probabilities(self, zeta, light_params):
        """Test each atom is served with m(B_r(x) ∩ Γ(x)) and the rest is no service."""
        law = poll_outcome_distribution(zeta, light_params)
        assert law.total_probability == pytest.approx(1.0)
        assert law.service_probability == pytest.approx(0.6)
        assert law.no_service_probability == pytest.approx(0.4)

    def test_polled_population(self, zeta, light_params):
        """Test Aₚ‖·‖(ζ) = ‖ζ‖ − k_r(ζ)."""
        assert apply_polling_operator(PopulationFunctional(), zeta, light_params) == pytest.approx(
            2.4
        )

    def test_stacked_atom(self, light_params):
        """Test a cluster loses one customer with probability 2r."""
        law = poll_outcome_distribution(Configuration.cluster(0.5, 5), light_params)
        assert len(law.outcomes) == 2
        served, p = law.outcomes[0]
        assert served.total_variation == 4
        assert p == pytest.approx(0.2)

    def test_empty(self, light_params):
        """Test the empty configuration stays empty."""
        law = poll_outcome_distribution(Configuration.empty(), light_params)
        assert law.outcomes == ((Configuration.empty(), 1.0),)

    def test_sampled_frequency(self, zeta, light_params):
        """Test sample_poll serves with probability k_r(ζ)."""
        rng = np.random.default_rng(3)
        polls = 20_000
        served = sum(
            sample_poll(zeta, light_params, rng).total_variation == 2 for _ in range(polls)
        )
        assert served / polls == pytest.approx(0.6, abs=0.015)


def served_atom(zeta: Configuration, after: Configuration) -> int:
    """Index in ζ of the atom a poll removed, or len(ζ) when nothing was served."""
    missing = np.setdiff1d(zeta.locations, after.locations)
    if missing.size == 0:
        return len(zeta.locations)
    return int(np.searchsorted(zeta.locations, missing[0]))


class TestPerAtomService:
    """Test suite for which atom a poll serves."""

    @pytest.fixture
    def zeta(self):
        return Configuration.from_locations([0.1, 0.2, 0.6])

    def test_exact_weights(self, zeta, light_params):
        """Test the served-atom law is m(B_r(x) ∩ Γ(x)) per atom."""
        law = poll_outcome_distribution(zeta, light_params)
        weights = [p for _, p in law.outcomes]
        assert weights == pytest.approx([0.15, 0.15, 0.2, 0.5])

    def test_sampled_atoms(self, zeta, light_params):
        """Test sample_poll frequencies per atom against the exact law."""
        rng = np.random.default_rng(17)
        polls = 30_000
        law = poll_outcome_distribution(zeta, light_params)
        expected = np.array([p for _, p in law.outcomes]) * polls
        hits = [served_atom(zeta, sample_poll(zeta, light_params, rng)) for _ in range(polls)]
        observed = np.bincount(hits, minlength=len(expected))
        assert stats.chisquare(observed, expected).pvalue > 0.001


class TestOneStepLaw:
    """Test suite for one chain step against arrivals composed with the poll law."""

    @pytest.fixture
    def zeta(self):
        return Configuration.from_locations([0.1, 0.2, 0.6])

    @pytest.fixture
    def full_scan_params(self):
        """r = ℓ/2: every nonempty configuration is served."""
        return SystemParams(0.5, 0.5, 1.0, InterpollingDistribution.exponential(1.0))

    def test_step_frequencies(self, zeta, full_scan_params):
        """
        Test one step from ζ. Without arrivals the served atom follows the poll law of ζ;
        otherwise the batch size follows G_λ.
        """
        law = poll_outcome_distribution(zeta, full_scan_params)
        weights = np.array([p for _, p in law.outcomes[:-1]])
        assert weights == pytest.approx([0.3, 0.25, 0.45])
        assert law.no_service_probability == pytest.approx(0.0)

        levels = 5
        pmf = full_scan_params.distribution.pmf_vector(full_scan_params.arrival_rate, levels)
        expected = np.concatenate(
            (pmf[0] * weights, pmf[1:levels], [1.0 - pmf[:levels].sum()])
        )

        steps = 30_000
        draws = draw_stream(full_scan_params, seed=23)
        observed = np.zeros(expected.size, dtype=int)
        for _ in range(steps):
            chain = PollingChain(full_scan_params, zeta)
            outcome = chain.step(next(draws))
            assert outcome.served == 1
            if outcome.arrivals == 0:
                observed[served_atom(zeta, chain.configuration())] += 1
            else:
                observed[len(weights) - 1 + min(outcome.arrivals, levels)] += 1

        assert stats.chisquare(observed, expected * steps).pvalue > 0.001

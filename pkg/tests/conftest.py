"""
Shared fixtures.
"""

import pytest

from spatialpoll.kernels.distributions import InterpollingDistribution
from spatialpoll.kernels.params import SystemParams


@pytest.fixture
def light_params():
    """Light traffic on the unit circle: λ=0.1, exponential mean 1, r=0.1."""
    return SystemParams(0.1, 0.1, 1.0, InterpollingDistribution.exponential(1.0))


@pytest.fixture
def moderate_params():
    """λs₁ = 0.5 with exponential interpolling times, r=0.1."""
    return SystemParams(0.5, 0.1, 1.0, InterpollingDistribution.exponential(1.0))

"""
Quadratic Lyapunov machinery: energy form, seminorm, interpolation sums and drift constants.
"""

from spatialpoll.lyapunov.drift_constants import (
    DriftConstants,
    SeminormDriftConstants,
    admissible_exponent,
    drift_constants,
    seminorm_drift_constants,
)
from spatialpoll.lyapunov.energy import (
    EnergyParams,
    ball_count_representation,
    cluster_ball_count,
    covering_ball_counts,
    energy,
    inner_product,
    norm_bounds_positive,
    seminorm,
    triangular_kernel,
)
from spatialpoll.lyapunov.interpolation import (
    interpolation_sum,
    interpolation_sums,
    interpolation_target,
    nn_interpolant,
)

__all__ = [
    "DriftConstants",
    "SeminormDriftConstants",
    "admissible_exponent",
    "drift_constants",
    "seminorm_drift_constants",
    "EnergyParams",
    "ball_count_representation",
    "cluster_ball_count",
    "covering_ball_counts",
    "energy",
    "inner_product",
    "norm_bounds_positive",
    "seminorm",
    "triangular_kernel",
    "interpolation_sum",
    "interpolation_sums",
    "interpolation_target",
    "nn_interpolant",
]

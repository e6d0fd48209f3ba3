"""
Path simulation of the polling chain, stationary estimation and steady-state diagnostics.
"""

from spatialpoll.simulation.autonomous import autonomous_queue_oracle, autonomous_queue_path
from spatialpoll.simulation.chain import PollingChain, StepOutcome
from spatialpoll.simulation.diagnostics import TailFit, laplace_residual, tail_geometric_fit
from spatialpoll.simulation.monte_carlo import drift_monte_carlo, sample_arrival_functional
from spatialpoll.simulation.paths import (
    LaplaceSample,
    PathRecord,
    collect_laplace_sample,
    coupled_paths,
    emptying_lower_bound,
    emptying_probability,
    growth_slope,
    run_path,
)
from spatialpoll.simulation.regenerative import (
    StationaryEstimate,
    batch_means,
    batch_means_estimate,
    regenerative_estimate,
    stationary_estimate,
)
from spatialpoll.simulation.workers import run_parallel, spawn_seeds, substream

__all__ = [
    "autonomous_queue_oracle",
    "autonomous_queue_path",
    "PollingChain",
    "StepOutcome",
    "TailFit",
    "laplace_residual",
    "tail_geometric_fit",
    "drift_monte_carlo",
    "sample_arrival_functional",
    "LaplaceSample",
    "PathRecord",
    "collect_laplace_sample",
    "coupled_paths",
    "emptying_lower_bound",
    "emptying_probability",
    "growth_slope",
    "run_path",
    "StationaryEstimate",
    "batch_means",
    "batch_means_estimate",
    "regenerative_estimate",
    "stationary_estimate",
    "run_parallel",
    "spawn_seeds",
    "substream",
]

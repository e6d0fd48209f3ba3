"""
One-step dynamics of the polling system: interpolling distributions, arrival and polling
operators, and drift evaluators.
"""

from spatialpoll.kernels.arrivals import (
    StepDraw,
    StepDrawStream,
    sample_batch_sizes,
    sample_interarrival_batch,
)
from spatialpoll.kernels.distributions import (
    DistributionKind,
    InterpollingDistribution,
    mixed_poisson_pmf,
)
from spatialpoll.kernels.drift import (
    DriftEvaluation,
    energy_drift,
    population_drift,
    population_drift_lower_bound,
    seminorm_drift,
)
from spatialpoll.kernels.functionals import (
    CallableFunctional,
    ConstantFunctional,
    EnergyFunctional,
    ExpSeminormFunctional,
    Functional,
    PopulationFunctional,
    SeminormFunctional,
    functional_from_name,
)
from spatialpoll.kernels.operators import (
    Estimate,
    apply_arrival_operator,
    drift,
    one_step_expectation,
)
from spatialpoll.kernels.params import SystemParams
from spatialpoll.kernels.polling import (
    PollOutcomeDistribution,
    apply_polling_operator,
    poll_index,
    poll_outcome_distribution,
    sample_poll,
)

__all__ = [
    "StepDraw",
    "StepDrawStream",
    "sample_batch_sizes",
    "sample_interarrival_batch",
    "DistributionKind",
    "InterpollingDistribution",
    "mixed_poisson_pmf",
    "DriftEvaluation",
    "energy_drift",
    "population_drift",
    "population_drift_lower_bound",
    "seminorm_drift",
    "CallableFunctional",
    "ConstantFunctional",
    "EnergyFunctional",
    "ExpSeminormFunctional",
    "Functional",
    "PopulationFunctional",
    "SeminormFunctional",
    "functional_from_name",
    "Estimate",
    "apply_arrival_operator",
    "drift",
    "one_step_expectation",
    "SystemParams",
    "PollOutcomeDistribution",
    "apply_polling_operator",
    "poll_index",
    "poll_outcome_distribution",
    "sample_poll",
]

"""
Steady-state diagnostics: the Laplace functional residual and the geometric tail fit.
"""

from __future__ import annotations

import logging
import math
from typing import Iterable, NamedTuple, Tuple, Union

import numpy as np
import pandas as pd
from scipy import stats

from spatialpoll.errors import InsufficientDataError, InvalidParameterError
from spatialpoll.kernels.operators import Estimate
from spatialpoll.kernels.params import SystemParams
from spatialpoll.simulation.paths import LaplaceSample
from spatialpoll.simulation.regenerative import StationaryEstimate, batch_means

logger = logging.getLogger(__name__)

# Tail levels need at least this many visited states to enter the fit
MIN_LEVEL_COUNT = 10
MIN_TAIL_LEVELS = 5


def laplace_residual(
    params: SystemParams,
    theta: float,
    stationary_sample: Union[LaplaceSample, Iterable[Tuple[int, float]]],
    batches: int = 30,
) -> Estimate:
    """
    Ê e^{−θ‖V‖} − Ĝ(λ(1 − e^{−θ})) Ê e^{−θ‖V‖}(1 + (e^θ − 1)k_r(V)) over pre-poll states V.

    Zero in steady state; the standard error comes from batch means of the per-state terms.
    """
    if not (theta > 0 and math.isfinite(theta)):
        raise InvalidParameterError(f"Laplace argument must be positive and finite, got {theta}")
    if isinstance(stationary_sample, LaplaceSample):
        population = stationary_sample.population.astype(float)
        success = stationary_sample.scan_success
    else:
        pairs = np.asarray(list(stationary_sample), dtype=float).reshape(-1, 2)
        population, success = pairs[:, 0], pairs[:, 1]

    transform = params.distribution.laplace_transform(
        params.arrival_rate * (1.0 - math.exp(-theta))
    )
    decay = np.exp(-theta * population)
    terms = decay - transform * decay * (1.0 + math.expm1(theta) * success)
    residual = batch_means(terms, batches)
    logger.debug(f"Laplace residual at θ={theta}: {residual.value:.3g} ± {residual.stderr:.2g}")
    return residual


class TailFit(NamedTuple):
    rate: float
    r_squared: float
    levels: np.ndarray
    log_survival: np.ndarray

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"k": self.levels, "log_survival": self.log_survival})


def tail_geometric_fit(estimate: StationaryEstimate) -> TailFit:
    """Straight-line fit of log P(‖W‖ ≥ k) against k over well-populated levels k ≥ 1."""
    histogram = np.asarray(estimate.tail_histogram, dtype=float)
    at_least = np.cumsum(histogram[::-1])[::-1]
    levels = np.arange(1, histogram.size)
    levels = levels[at_least[levels] >= MIN_LEVEL_COUNT]
    if levels.size < MIN_TAIL_LEVELS:
        raise InsufficientDataError("insufficient tail data")
    log_survival = np.log(at_least[levels] / at_least[0])
    fit = stats.linregress(levels, log_survival)
    return TailFit(float(fit.slope), float(fit.rvalue**2), levels, log_survival)

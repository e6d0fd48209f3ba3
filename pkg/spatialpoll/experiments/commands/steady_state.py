"""
Steady-state commands: stationary mean, Laplace functional residual and geometric tail fit.

Emitted CSV files (in the output directory):
    stationary_histogram.csv  k, count
    laplace_residuals.csv     theta, residual, stderr
    tail_fit.csv              k, log_survival
"""

from typing import List

import numpy as np
import pandas as pd

from spatialpoll.errors import InsufficientDataError, UnstableSystemError
from spatialpoll.experiments.commands.base import BaseCommand, CommandSpec
from spatialpoll.experiments.report import Report
from spatialpoll.kernels.params import SystemParams
from spatialpoll.simulation.autonomous import autonomous_queue_oracle
from spatialpoll.simulation.diagnostics import laplace_residual, tail_geometric_fit
from spatialpoll.simulation.paths import collect_laplace_sample
from spatialpoll.simulation.regenerative import (
    MIN_CI_CYCLES,
    StationaryEstimate,
    batch_means_estimate,
    stationary_estimate,
)
from spatialpoll.simulation.workers import substream
from spatialpoll.utils.config import ScenarioConfig

LAPLACE_SIGMAS = 3.0
TAIL_R_SQUARED = 0.95


class SteadyStateCommands(BaseCommand):
    """Commands built on long stable runs."""

    def get_commands(self) -> List[CommandSpec]:
        return [
            CommandSpec(
                name="stationary",
                description="Regenerative estimate of the stationary mean population",
            ),
            CommandSpec(
                name="laplace-check",
                description="Residual of the stationary Laplace functional equation",
            ),
            CommandSpec(
                name="tail-fit",
                description="Geometric fit of the stationary population tail",
            ),
        ]

    def execute(self, command_name: str, config: ScenarioConfig) -> Report:
        if command_name == "stationary":
            return self._stationary(config)
        elif command_name == "laplace-check":
            return self._laplace_check(config)
        elif command_name == "tail-fit":
            return self._tail_fit(config)
        raise ValueError(f"Unknown command: {command_name}")

    def _estimate(self, params: SystemParams, config: ScenarioConfig) -> StationaryEstimate:
        """Regenerative estimate, or batch means when too few cycles complete."""
        seed = substream(config.seed, 0)
        try:
            estimate = stationary_estimate(params, config.min_cycles, config.max_steps, seed)
            if estimate.complete and estimate.cycles >= MIN_CI_CYCLES:
                return estimate
        except InsufficientDataError:
            pass
        self.logger.warning(
            f"Too few regeneration cycles within {config.max_steps} polls, "
            f"falling back to batch means"
        )
        return batch_means_estimate(params, config.max_steps, seed)

    def _stationary(self, config: ScenarioConfig) -> Report:
        report = Report("stationary", config)
        params = config.system_params()
        estimate = self._estimate(params, config)
        report.values.update(
            {
                "mean_population": estimate.mean_population,
                "time_average_population": estimate.mean_population
                + params.time_average_offset,
                "half_width_95": estimate.half_width_95,
                "cycles": estimate.cycles,
                "cycle_length_mean": estimate.cycle_length_mean,
                "method": estimate.method,
                "light_traffic_approximation": params.light_traffic_mean(),
            }
        )
        histogram = pd.DataFrame(
            {"k": np.arange(estimate.tail_histogram.size), "count": estimate.tail_histogram}
        )
        self.write_csv(report, histogram, "stationary_histogram.csv")

        if 2.0 * params.scan_radius >= params.circumference:
            oracle = autonomous_queue_oracle(
                params.arrival_rate,
                params.distribution,
                max(estimate.steps, config.steps),
                substream(config.seed, 1),
            )
            report.values["autonomous_queue_mean"] = oracle.mean_population
            report.check(
                "autonomous_queue_agreement",
                estimate.overlaps(oracle),
                f"spatial {estimate.mean_population:.4g} ± {estimate.half_width_95}, "
                f"scalar {oracle.mean_population:.4g} ± {oracle.half_width_95}",
            )
        return report

    def _laplace_check(self, config: ScenarioConfig) -> Report:
        report = Report("laplace-check", config)
        params = config.system_params()
        if not params.is_stable:
            raise UnstableSystemError(f"The Laplace identity needs λs₁ < 1, got {params.load}")
        sample = collect_laplace_sample(params, config.steps, substream(config.seed, 0))
        report.values["cycles"] = sample.cycles
        rows = []
        for theta in config.thetas:
            residual = laplace_residual(params, theta, sample)
            rows.append(
                {"theta": theta, "residual": residual.value, "stderr": residual.stderr}
            )
            report.check(
                f"laplace_residual_theta_{theta}",
                abs(residual.value) <= LAPLACE_SIGMAS * residual.stderr + 1e-12,
                f"{residual.value:.3g} ± {residual.stderr:.2g} over {len(sample)} states",
            )
        self.write_csv(report, pd.DataFrame(rows), "laplace_residuals.csv")
        return report

    def _tail_fit(self, config: ScenarioConfig) -> Report:
        report = Report("tail-fit", config)
        estimate = self._estimate(config.system_params(), config)
        try:
            fit = tail_geometric_fit(estimate)
        except InsufficientDataError as e:
            report.skip("geometric_tail", str(e))
            return report
        report.values.update(
            {"rate": fit.rate, "r_squared": fit.r_squared, "levels": len(fit.levels)}
        )
        self.write_csv(report, fit.to_frame(), "tail_fit.csv")
        report.check(
            "geometric_tail",
            fit.r_squared >= TAIL_R_SQUARED,
            f"slope {fit.rate:.4g}, r² {fit.r_squared:.4f} over {len(fit.levels)} levels",
        )
        return report

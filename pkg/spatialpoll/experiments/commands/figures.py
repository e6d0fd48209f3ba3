"""
figures: population paths in light and heavy traffic, and the light-traffic radius sweep.

Emitted CSV files (in the output directory):
    path_lambda_<λ>.csv    step, population
    light_traffic_sweep.csv  r, simulated_mean (time average), ci_half_width, cycles,
                           approximation
"""

import math
from typing import List, Tuple

import numpy as np
import pandas as pd

from spatialpoll.experiments.commands.base import BaseCommand, CommandSpec
from spatialpoll.experiments.report import Report
from spatialpoll.kernels.distributions import InterpollingDistribution
from spatialpoll.kernels.params import SystemParams
from spatialpoll.simulation.paths import run_path
from spatialpoll.simulation.regenerative import stationary_estimate
from spatialpoll.simulation.workers import run_parallel, substream
from spatialpoll.utils.config import ScenarioConfig

PATH_ARRIVAL_RATES = (0.1, 0.9)
SWEEP_ARRIVAL_RATE = 0.1
FIGURE_RADIUS = 0.1
FIGURE_CIRCUMFERENCE = 1.0
LIGHT_TRAFFIC_TOLERANCE = 0.25
LIGHT_TRAFFIC_RADII = (0.05, 0.1, 0.2, 0.3)

SweepTask = Tuple[SystemParams, int, int, np.random.SeedSequence]


def figure_params(arrival_rate: float, scan_radius: float = FIGURE_RADIUS) -> SystemParams:
    """Exponential interpolling times with mean 1 on the unit circle."""
    return SystemParams(
        arrival_rate=arrival_rate,
        scan_radius=scan_radius,
        circumference=FIGURE_CIRCUMFERENCE,
        distribution=InterpollingDistribution.exponential(1.0),
    )


def sweep_point(task: SweepTask) -> dict:
    params, min_cycles, max_steps, seed = task
    estimate = stationary_estimate(params, min_cycles, max_steps, seed)
    # the chain is sampled just after polls, the approximation is a time average
    return {
        "r": params.scan_radius,
        "simulated_mean": estimate.mean_population + params.time_average_offset,
        "ci_half_width": math.nan if estimate.half_width_95 is None else estimate.half_width_95,
        "cycles": estimate.cycles,
        "approximation": params.light_traffic_mean(),
    }


class FigureCommands(BaseCommand):
    """Data behind the path and light-traffic figures."""

    def get_commands(self) -> List[CommandSpec]:
        return [
            CommandSpec(
                name="figures",
                description="Write population paths and the light-traffic sweep as CSV",
            )
        ]

    def execute(self, command_name: str, config: ScenarioConfig) -> Report:
        if command_name == "figures":
            return self._figures(config)
        raise ValueError(f"Unknown command: {command_name}")

    def _figures(self, config: ScenarioConfig) -> Report:
        report = Report("figures", config)
        self._write_paths(report, config)
        self._write_sweep(report, config)
        return report

    def _write_paths(self, report: Report, config: ScenarioConfig) -> None:
        for i, lam in enumerate(PATH_ARRIVAL_RATES):
            path = run_path(figure_params(lam), config.steps, substream(config.seed, i))
            frame = path.to_frame()
            self.write_csv(report, frame, f"path_lambda_{lam}.csv")
            report.values[f"empty_fraction_lambda_{lam}"] = path.empty_fraction
            report.check(
                f"path_rows_lambda_{lam}",
                len(frame) == config.steps + 1,
                f"{len(frame)} rows for {config.steps} steps",
            )

    def _write_sweep(self, report: Report, config: ScenarioConfig) -> None:
        tasks: List[SweepTask] = [
            (
                figure_params(SWEEP_ARRIVAL_RATE, r),
                config.min_cycles,
                config.max_steps,
                substream(config.seed, 100 + i),
            )
            for i, r in enumerate(config.radii)
        ]
        self.logger.info(f"Light-traffic sweep over {len(tasks)} radii")
        rows = run_parallel(sweep_point, tasks, config.threads)
        frame = pd.DataFrame(
            rows, columns=["r", "simulated_mean", "ci_half_width", "cycles", "approximation"]
        )
        self.write_csv(report, frame, "light_traffic_sweep.csv")

        checked = [
            row for row in rows if any(math.isclose(row["r"], r) for r in LIGHT_TRAFFIC_RADII)
        ]
        if not checked:
            report.skip(
                "light_traffic_approximation",
                f"no sweep radius in {list(LIGHT_TRAFFIC_RADII)}",
            )
            report.skip("light_traffic_cycles", "no checked sweep radius")
            return

        errors = {
            row["r"]: abs(row["simulated_mean"] - row["approximation"]) / row["approximation"]
            for row in checked
        }
        for row in checked:
            if math.isclose(row["r"], FIGURE_RADIUS):
                report.values["light_traffic_relative_error"] = errors[row["r"]]
        worst_r = max(errors, key=errors.get)
        report.values["light_traffic_worst_relative_error"] = errors[worst_r]
        report.check(
            "light_traffic_approximation",
            errors[worst_r] <= LIGHT_TRAFFIC_TOLERANCE,
            f"time-average mean within {errors[worst_r]:.1%} of λs₁/m(B_r) at "
            f"{len(checked)} radii, worst at r={worst_r}",
        )
        fewest = min(int(row["cycles"]) for row in checked)
        report.check(
            "light_traffic_cycles",
            fewest >= config.min_cycles,
            f"fewest regeneration cycles {fewest}, need {config.min_cycles}",
        )

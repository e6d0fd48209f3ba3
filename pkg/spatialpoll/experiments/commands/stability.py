"""
stability-sweep: regeneration statistics below λs₁ = 1, transient growth above it.

Emitted CSV (in the output directory):
    stability_sweep.csv  arrival_rate, load, r, regime, cycles, cycle_length_mean,
                         simulated_mean, ci_half_width, replicate_mean,
                         replicate_ci_half_width, replicates_agree, growth_slope,
                         final_population

Stable cells are estimated twice from independent seeds; replicates_agree is empty when either
run has too few cycles for a confidence interval.
"""

import math
from typing import List, Tuple

import numpy as np
import pandas as pd

from spatialpoll.errors import InsufficientDataError
from spatialpoll.experiments.commands.base import BaseCommand, CommandSpec
from spatialpoll.experiments.report import Report
from spatialpoll.kernels.params import SystemParams
from spatialpoll.simulation.paths import growth_slope, run_path
from spatialpoll.simulation.regenerative import StationaryEstimate, stationary_estimate
from spatialpoll.simulation.workers import run_parallel, substream
from spatialpoll.utils.config import ScenarioConfig

BOUNDARY = "boundary: not positive recurrent"
STABLE = "positive recurrent"
TRANSIENT = "transient"
LOAD_TOLERANCE = 1e-9
GROWTH_TOLERANCE = 0.2

COLUMNS = [
    "arrival_rate",
    "load",
    "r",
    "regime",
    "cycles",
    "cycle_length_mean",
    "simulated_mean",
    "ci_half_width",
    "replicate_mean",
    "replicate_ci_half_width",
    "replicates_agree",
    "growth_slope",
    "final_population",
]

CellTask = Tuple[SystemParams, ScenarioConfig, np.random.SeedSequence]


def regime(load: float) -> str:
    if abs(load - 1.0) <= LOAD_TOLERANCE:
        return BOUNDARY
    return STABLE if load < 1.0 else TRANSIENT


def _half_width(estimate: StationaryEstimate) -> float:
    return math.nan if estimate.half_width_95 is None else estimate.half_width_95


def sweep_cell(task: CellTask) -> dict:
    params, config, seed = task
    row = dict.fromkeys(COLUMNS, math.nan)
    row.update(
        arrival_rate=params.arrival_rate,
        load=params.load,
        r=params.scan_radius,
        regime=regime(params.load),
        replicates_agree=None,
    )
    if row["regime"] == STABLE:
        # two independent seed sets for the same cell
        first_seed, second_seed = seed.spawn(2)
        try:
            first = stationary_estimate(params, config.min_cycles, config.max_steps, first_seed)
            second = stationary_estimate(params, config.min_cycles, config.max_steps, second_seed)
        except InsufficientDataError:
            row["cycles"] = 0
            return row
        row.update(
            cycles=first.cycles,
            cycle_length_mean=first.cycle_length_mean,
            simulated_mean=first.mean_population,
            ci_half_width=_half_width(first),
            replicate_mean=second.mean_population,
            replicate_ci_half_width=_half_width(second),
        )
        if first.interval is not None and second.interval is not None:
            row["replicates_agree"] = first.overlaps(second)
    elif row["regime"] == TRANSIENT:
        population = run_path(params, config.steps, seed).population
        row["growth_slope"] = growth_slope(population)
        row["final_population"] = int(population[-1])
    return row


class StabilityCommands(BaseCommand):
    """Sweep of the arrival rate across the stability threshold at several scan radii."""

    def get_commands(self) -> List[CommandSpec]:
        return [
            CommandSpec(
                name="stability-sweep",
                description="Cycle statistics or growth slopes over the arrival-rate grid",
            )
        ]

    def execute(self, command_name: str, config: ScenarioConfig) -> Report:
        if command_name == "stability-sweep":
            return self._stability_sweep(config)
        raise ValueError(f"Unknown command: {command_name}")

    def _stability_sweep(self, config: ScenarioConfig) -> Report:
        report = Report("stability-sweep", config)
        base = config.system_params()
        tasks: List[CellTask] = []
        for lam in config.arrival_rates:
            for r in config.radii:
                params = base.with_arrival_rate(lam).with_radius(r)
                tasks.append((params, config, substream(config.seed, len(tasks))))
        self.logger.info(
            f"Stability sweep: {len(config.arrival_rates)} arrival rates x "
            f"{len(config.radii)} radii"
        )

        rows = run_parallel(sweep_cell, tasks, config.threads)
        frame = pd.DataFrame(rows, columns=COLUMNS)
        self.write_csv(report, frame, "stability_sweep.csv")

        stable = frame[frame["regime"] == STABLE]
        transient = frame[frame["regime"] == TRANSIENT]
        boundary = frame[frame["regime"] == BOUNDARY]
        if len(boundary):
            report.values["boundary_arrival_rates"] = sorted(set(boundary["arrival_rate"]))
            self.logger.warning(f"{len(boundary)} cells at λs₁ = 1 flagged as {BOUNDARY}")

        if len(stable):
            report.check(
                "stable_cycles_complete",
                bool((stable["cycles"] >= 2).all()),
                f"{len(stable)} stable cells, fewest cycles {int(stable['cycles'].min())}",
            )
            compared = stable[stable["replicates_agree"].notna()]
            if len(compared):
                disagree = compared[~compared["replicates_agree"].astype(bool)]
                report.check(
                    "stable_replicates_agree",
                    disagree.empty,
                    f"{len(compared) - len(disagree)} of {len(compared)} stable cells with "
                    f"overlapping 95% intervals across two seed sets",
                )
            else:
                report.skip("stable_replicates_agree", "no stable cell has two intervals")
        else:
            report.skip("stable_cycles_complete", "no arrival rate below the threshold")
            report.skip("stable_replicates_agree", "no arrival rate below the threshold")
        if len(transient):
            expected = transient["load"] - 1.0
            errors = (transient["growth_slope"] - expected).abs() / expected
            worst = float(errors.max())
            report.values["transient_worst_relative_error"] = worst
            report.check(
                "transient_growth",
                worst <= GROWTH_TOLERANCE,
                f"{len(transient)} transient cells, growth slopes within {worst:.1%} "
                f"of λs₁ − 1",
            )
        else:
            report.skip("transient_growth", "no arrival rate above the threshold")
        return report

"""
drift-certificate: quadratic drift bound of the energy, and the population counterexample.
"""

import math
from typing import List, Optional, Tuple

import numpy as np

from spatialpoll.experiments.commands.base import BaseCommand, CommandSpec
from spatialpoll.experiments.report import Report
from spatialpoll.kernels.drift import (
    energy_drift,
    population_drift,
    population_drift_lower_bound,
    seminorm_drift,
)
from spatialpoll.kernels.params import SystemParams
from spatialpoll.lyapunov.drift_constants import (
    admissible_exponent,
    drift_constants,
    seminorm_drift_constants,
)
from spatialpoll.lyapunov.energy import EnergyParams
from spatialpoll.measures.configurations import Configuration
from spatialpoll.simulation.workers import run_parallel, substream
from spatialpoll.utils.config import ScenarioConfig

CLUSTER_SIZES = (1, 10, 100, 1000)
UNIFORM_SIZES = (1, 10, 100)
STRUCTURED_SIZE = len(UNIFORM_SIZES) + 2 * len(CLUSTER_SIZES) - 1
VANISHING_RANDOM_SAMPLES = 50
MAX_RANDOM_ATOMS = 200
COUNTEREXAMPLE_SIZE = 100
VANISHING_RATE = 1e-9
MAX_SEMINORM_THRESHOLD = 1000
SIGMAS = 4.0

Corpus = List[Tuple[str, Configuration]]
EnergyCase = Tuple[str, Configuration, SystemParams, EnergyParams, int, np.random.SeedSequence]


def drift_corpus(rng: np.random.Generator, length: float, random_samples: int) -> Corpus:
    """Uniform grids, single clusters nδ_0, two antipodal clusters and random configurations."""
    corpus: Corpus = []
    for n in UNIFORM_SIZES:
        grid = np.arange(n) * (length / n)
        corpus.append((f"uniform_{n}", Configuration.from_locations(grid, length)))
    for n in CLUSTER_SIZES:
        corpus.append((f"cluster_{n}", Configuration.cluster(0.0, n, length)))
    for n in CLUSTER_SIZES[:-1]:
        pair = Configuration.from_atoms([(0.0, n), (length / 2.0, n)], length)
        corpus.append((f"two_cluster_{n}", pair))
    for i in range(random_samples):
        size = int(rng.integers(1, MAX_RANDOM_ATOMS + 1))
        zeta = Configuration.from_locations(rng.uniform(0.0, length, size), length)
        corpus.append((f"random_{i}", zeta))
    return corpus


def energy_case(task: EnergyCase) -> Tuple[float, Optional[str]]:
    """Margin Dh − bound of one corpus entry, and its counterexample dump if the bound fails."""
    name, zeta, params, p, inner_samples, seed = task
    try:
        result = energy_drift(zeta, params, p, inner_samples=inner_samples, seed=seed)
    except ArithmeticError as e:
        return math.inf, f"# {name}: {e}\n{zeta.to_text()}"
    if not result.respects_bound:
        dump = f"# {name}: drift={result.value!r} bound={result.bound!r}\n{zeta.to_text()}"
        return result.value - result.bound, dump
    return result.value - result.bound, None


class DriftCommands(BaseCommand):
    """Drift certificate for the energy Lyapunov function."""

    def get_commands(self) -> List[CommandSpec]:
        return [
            CommandSpec(
                name="drift-certificate",
                description="Print c₁, c₂ and check the quadratic energy drift bound",
            )
        ]

    def execute(self, command_name: str, config: ScenarioConfig) -> Report:
        if command_name == "drift-certificate":
            return self._drift_certificate(config)
        raise ValueError(f"Unknown command: {command_name}")

    def _drift_certificate(self, config: ScenarioConfig) -> Report:
        report = Report("drift-certificate", config)
        params = config.system_params()
        p = config.energy_params()
        g = params.distribution

        constants = drift_constants(params.arrival_rate, g.s1, g.s2, p)
        report.values.update(
            {"load": params.load, "a": p.a, "c1": constants.c1, "c2": constants.c2}
        )
        self.logger.info(
            f"Drift constants at λs₁={params.load:.4g}, a={p.a:.4g}: "
            f"c₁={constants.c1:.6g}, c₂={constants.c2:.6g}"
        )

        if not params.is_stable:
            self.logger.warning(
                f"λs₁={params.load:.4g} ≥ 1: no certificate, reporting counterexamples only"
            )
            report.values["mode"] = "counterexample-only"
            report.skip("energy_drift_bound", "unstable parameters")
        elif not p.permits_scan_radius(params.scan_radius):
            report.values["mode"] = "counterexample-only"
            report.skip(
                "energy_drift_bound",
                f"precondition a <= min(ℓ/2, 2r) violated: a={p.a}, r={params.scan_radius}",
            )
        else:
            report.values["mode"] = "certificate"
            self._check_energy_bound(report, config, params, p)
            self._check_seminorm_drift(report, config, params, p)

        self._check_population_counterexample(report, config, params)
        self._check_vanishing_arrivals(report, config, params)
        return report

    def _check_energy_bound(
        self, report: Report, config: ScenarioConfig, params: SystemParams, p: EnergyParams
    ) -> None:
        random_samples = max(config.corpus_size - STRUCTURED_SIZE, 0)
        corpus = drift_corpus(
            np.random.default_rng(substream(config.seed, 0)), p.circumference, random_samples
        )
        self.logger.info(f"Energy drift over {len(corpus)} configurations")
        seeds = substream(config.seed, 1).spawn(len(corpus))
        tasks: List[EnergyCase] = [
            (name, zeta, params, p, config.inner_samples, seed)
            for (name, zeta), seed in zip(corpus, seeds)
        ]
        results = run_parallel(energy_case, tasks, config.threads)
        violations = [dump for _, dump in results if dump is not None]
        finite = [margin for margin, _ in results if math.isfinite(margin)]

        report.values["energy_drift_corpus_size"] = len(corpus)
        report.values["energy_drift_worst_margin"] = max(finite, default=-math.inf)
        report.check(
            "energy_drift_bound",
            not violations,
            f"{len(violations)} violations over {len(corpus)} configurations",
            "\n".join(violations) or None,
        )

    def _check_seminorm_drift(
        self, report: Report, config: ScenarioConfig, params: SystemParams, p: EnergyParams
    ) -> None:
        g = params.distribution
        constants = seminorm_drift_constants(params.arrival_rate, g.s1, g.s2, p)
        report.values["seminorm_alpha"] = constants.alpha
        report.values["seminorm_threshold"] = constants.threshold
        report.values["exp_seminorm_beta"] = admissible_exponent(params.arrival_rate, g.theta_max)

        if constants.threshold > MAX_SEMINORM_THRESHOLD:
            report.skip(
                "seminorm_drift_negative",
                f"threshold {constants.threshold} above {MAX_SEMINORM_THRESHOLD}",
            )
            return
        zeta = Configuration.cluster(0.0, constants.threshold, p.circumference)
        estimate = seminorm_drift(
            zeta,
            params,
            p,
            inner_samples=config.inner_samples,
            seed=substream(config.seed, 10_000),
        )
        report.values["seminorm_drift_at_threshold"] = estimate.value
        report.check(
            "seminorm_drift_negative",
            estimate.value <= -constants.alpha + SIGMAS * estimate.stderr,
            f"Dv={estimate.value:.6g} ± {estimate.stderr:.2g} at ‖ζ‖={constants.threshold}, "
            f"−alpha={-constants.alpha:.6g}",
            zeta.to_text(),
        )

    def _check_population_counterexample(
        self, report: Report, config: ScenarioConfig, params: SystemParams
    ) -> None:
        zeta = Configuration.cluster(0.0, COUNTEREXAMPLE_SIZE, params.circumference)
        estimate = population_drift(
            zeta, params, inner_samples=config.inner_samples, seed=substream(config.seed, 10_001)
        )
        lower = population_drift_lower_bound(zeta, params)
        report.values["population_drift"] = estimate.value
        report.values["population_drift_lower_bound"] = lower
        report.check(
            "population_drift_lower_bound",
            estimate.value >= lower - 1e-12,
            f"D‖·‖={estimate.value:.6g} ≥ {lower:.6g} at {COUNTEREXAMPLE_SIZE}δ_0",
            zeta.to_text(),
        )
        if lower > 0:
            self.logger.info(
                f"Population drift is positive at {COUNTEREXAMPLE_SIZE}δ_0: "
                f"{estimate.value:.6g} ≥ {lower:.6g}"
            )
            report.check(
                "population_drift_positive",
                estimate.value > 0,
                f"D‖·‖={estimate.value:.6g} at {COUNTEREXAMPLE_SIZE}δ_0",
                zeta.to_text(),
            )
        else:
            report.skip(
                "population_drift_positive",
                f"λs₁ ≤ 1 − G_λ(0)(1 − m(B_r)); lower bound {lower:.6g}",
            )

    def _check_vanishing_arrivals(
        self, report: Report, config: ScenarioConfig, params: SystemParams
    ) -> None:
        quiet = params.with_arrival_rate(VANISHING_RATE)
        corpus = drift_corpus(
            np.random.default_rng(substream(config.seed, 0)),
            quiet.circumference,
            VANISHING_RANDOM_SAMPLES,
        )
        corpus.append(("empty", Configuration.empty(quiet.circumference)))
        largest = -math.inf
        for i, (_, zeta) in enumerate(corpus):
            estimate = population_drift(
                zeta,
                quiet,
                inner_samples=config.inner_samples,
                seed=substream(config.seed, 20_000 + i),
            )
            largest = max(largest, estimate.value)
        # only the empty configuration can exceed 0, and by at most λs₁
        report.check(
            "vanishing_arrivals_drift",
            largest <= quiet.load + 1e-12,
            f"max D‖·‖ = {largest:.3g} at λ={VANISHING_RATE}",
        )

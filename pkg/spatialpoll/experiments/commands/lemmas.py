"""
verify-lemmas: property corpus for the energy form, its seminorm and the interpolation sums.
"""

import math
from typing import Callable, List, Optional

import numpy as np

from spatialpoll.experiments.commands.base import BaseCommand, CommandSpec
from spatialpoll.experiments.report import Report
from spatialpoll.lyapunov.energy import (
    EnergyParams,
    Kernel,
    ball_count_representation,
    covering_ball_counts,
    energy,
    inner_product,
    norm_bounds_positive,
    triangular_kernel,
)
from spatialpoll.lyapunov.interpolation import interpolation_sum, interpolation_target
from spatialpoll.measures.configurations import Configuration, SignedConfiguration
from spatialpoll.utils.config import ScenarioConfig

EXACT_TOLERANCE = 1e-10
ORACLE_TOLERANCE = 1e-9
PSD_TOLERANCE = 1e-12
MAX_ATOMS = 30
MAX_WEIGHT = 5


def unclamped_kernel(d: np.ndarray, a: float) -> np.ndarray:
    """a − d without the positive part; only for checking that the corpus catches it."""
    return a - d


def dump_measure(measure: SignedConfiguration, **header) -> str:
    lines = [f"# {key}={value!r}" for key, value in header.items()]
    lines += [f"{x!r}:{w}" for x, w in measure.atoms]
    return "\n".join(lines) + "\n"


class _Tally:
    """Violation counter keeping the first counterexample."""

    def __init__(self):
        self.violations = 0
        self.trials = 0
        self.first: Optional[str] = None

    def record(self, ok: bool, dump: Callable[[], str]) -> None:
        self.trials += 1
        if not ok:
            self.violations += 1
            if self.first is None:
                self.first = dump()

    def report(self, report: Report, name: str) -> None:
        report.check(
            name,
            self.violations == 0,
            f"{self.violations} violations in {self.trials} instances",
            self.first,
        )


class LemmaCommands(BaseCommand):
    """Seminorm properties, norm bounds, cluster balls and interpolation identities."""

    def __init__(self, kernel: Kernel = triangular_kernel):
        super().__init__()
        self.kernel = kernel

    def get_commands(self) -> List[CommandSpec]:
        return [
            CommandSpec(
                name="verify-lemmas",
                description="Run the property corpus for the energy form and interpolation sums",
            )
        ]

    def execute(self, command_name: str, config: ScenarioConfig) -> Report:
        if command_name == "verify-lemmas":
            return self._verify_lemmas(config)
        raise ValueError(f"Unknown command: {command_name}")

    # corpus

    def _random_signed(
        self, rng: np.random.Generator, length: float, positive: bool = False
    ) -> SignedConfiguration:
        n = int(rng.integers(1, MAX_ATOMS + 1))
        locations = rng.uniform(0.0, length, n)
        if positive:
            return Configuration.from_atoms(
                zip(locations, rng.integers(1, MAX_WEIGHT + 1, n)), length
            )
        weights = rng.integers(-MAX_WEIGHT, MAX_WEIGHT + 1, n)
        return SignedConfiguration.from_atoms(zip(locations, weights), length)

    def _random_width(self, rng: np.random.Generator, length: float) -> EnergyParams:
        # uniform on (0, ℓ/2]
        return EnergyParams((1.0 - rng.random()) * length / 2.0, length)

    def _seminorm(self, measure: SignedConfiguration, p: EnergyParams) -> float:
        value = energy(measure, p, self.kernel)
        return math.sqrt(value) if value >= 0 else math.nan

    # checks

    def _verify_lemmas(self, config: ScenarioConfig) -> Report:
        report = Report("verify-lemmas", config)
        rng = np.random.default_rng(config.seed)
        length = config.circumference
        self.logger.info(f"Verifying lemmas on {config.corpus_size} instances (ℓ={length})")

        self._check_energy_form(report, rng, config.corpus_size, length)
        self._check_positive_bounds(report, rng, config.corpus_size, length)
        self._check_cluster_ball(report, rng, config.corpus_size, length)
        self._check_interpolation_identity(report, rng, config.corpus_size, length)
        self._check_key_inequality(report, rng, config)
        return report

    def _check_energy_form(
        self, report: Report, rng: np.random.Generator, size: int, length: float
    ) -> None:
        psd, oracle, triangle, upper = _Tally(), _Tally(), _Tally(), _Tally()
        unit_upper = _Tally()
        for _ in range(size):
            p = self._random_width(rng, length)
            zeta = self._random_signed(rng, length)
            eta = self._random_signed(rng, length)
            h = inner_product(zeta, zeta, p, self.kernel)

            psd.record(h >= -PSD_TOLERANCE, lambda: dump_measure(zeta, a=p.a, energy=h))
            exact = ball_count_representation(zeta, p)
            oracle.record(
                abs(h - exact) <= ORACLE_TOLERANCE,
                lambda: dump_measure(zeta, a=p.a, energy=h, ball_counts=exact),
            )

            norms = (
                self._seminorm(zeta + eta, p),
                self._seminorm(zeta, p),
                self._seminorm(eta, p),
            )
            triangle.record(
                norms[0] <= norms[1] + norms[2] + ORACLE_TOLERANCE,
                lambda: dump_measure(zeta, a=p.a) + "# second\n" + dump_measure(eta),
            )
            variation = zeta.total_variation
            upper.record(
                norms[1] <= math.sqrt(p.a) * variation + ORACLE_TOLERANCE,
                lambda: dump_measure(zeta, a=p.a, seminorm=norms[1]),
            )
            if length == 1.0:
                unit_upper.record(
                    norms[1] <= variation + ORACLE_TOLERANCE,
                    lambda: dump_measure(zeta, a=p.a, seminorm=norms[1]),
                )

        psd.report(report, "positive_semidefinite")
        oracle.report(report, "ball_count_representation")
        triangle.report(report, "triangle_inequality")
        upper.report(report, "seminorm_upper_bound")
        if length == 1.0:
            unit_upper.report(report, "seminorm_below_total_variation")
        else:
            report.skip("seminorm_below_total_variation", "stated on the unit circle only")

    def _check_positive_bounds(
        self, report: Report, rng: np.random.Generator, size: int, length: float
    ) -> None:
        if length != 1.0:
            report.skip("positive_two_sided_bound", "stated on the unit circle only")
            return
        tally = _Tally()
        for _ in range(size):
            p = self._random_width(rng, length)
            zeta = self._random_signed(rng, length, positive=True)
            lower, upper = norm_bounds_positive(zeta, p)
            value = self._seminorm(zeta, p)
            tally.record(
                lower - ORACLE_TOLERANCE <= value <= upper + ORACLE_TOLERANCE,
                lambda: dump_measure(zeta, a=p.a, seminorm=value, lower=lower, upper=upper),
            )
        tally.report(report, "positive_two_sided_bound")

    def _check_cluster_ball(
        self, report: Report, rng: np.random.Generator, size: int, length: float
    ) -> None:
        tally = _Tally()
        for _ in range(size):
            zeta = self._random_signed(rng, length, positive=True)
            n = int(rng.integers(1, 11))
            best = max(covering_ball_counts(zeta, n))
            tally.record(
                best * n >= zeta.total_variation,
                lambda: dump_measure(zeta, covering_arcs=n, best=best),
            )
        tally.report(report, "cluster_ball")

    def _check_interpolation_identity(
        self, report: Report, rng: np.random.Generator, size: int, length: float
    ) -> None:
        tally = _Tally()
        for _ in range(size):
            p = self._random_width(rng, length)
            x = float(rng.uniform(0.0, length))
            extra = rng.uniform(0.0, length, int(rng.integers(0, 21)))
            zeta = Configuration.from_locations([x - p.a, x, x + p.a, *extra], length)
            value = interpolation_sum(zeta.locations[zeta.locations.index(x)], zeta, p)
            target = interpolation_target(p)
            tally.record(
                abs(value - target) <= EXACT_TOLERANCE,
                lambda: dump_measure(zeta, a=p.a, x=x, value=value, target=target),
            )
        tally.report(report, "interpolation_identity")

    def _check_key_inequality(
        self, report: Report, rng: np.random.Generator, config: ScenarioConfig
    ) -> None:
        length = config.circumference
        fixed: Optional[EnergyParams] = None
        if config.kernel_width != "auto":
            fixed = config.energy_params()
            if not fixed.permits_scan_radius(config.scan_radius):
                detail = (
                    f"precondition a <= min(ℓ/2, 2r) violated: a={fixed.a}, "
                    f"r={config.scan_radius}"
                )
                report.skip("interpolation_inequality", detail)
                report.skip("interpolation_monotonicity", detail)
                return

        inequality, monotone = _Tally(), _Tally()
        for _ in range(config.corpus_size):
            if fixed is None:
                r = (1.0 - rng.random()) * length / 2.0
                p = EnergyParams.auto(r, length)
            else:
                r, p = config.scan_radius, fixed
            zeta = Configuration.from_locations(
                rng.uniform(0.0, length, int(rng.integers(1, MAX_ATOMS + 1))), length
            )
            x = zeta.locations[int(rng.integers(len(zeta)))]
            value = interpolation_sum(x, zeta, p, r)
            target = interpolation_target(p)
            inequality.record(
                value >= target - EXACT_TOLERANCE,
                lambda: dump_measure(zeta, a=p.a, r=r, x=x, value=value),
            )
            flanked = zeta.add_atoms([x - p.a, x + p.a])
            narrowed = interpolation_sum(x, flanked, p, r)
            monotone.record(
                narrowed <= value + EXACT_TOLERANCE,
                lambda: dump_measure(zeta, a=p.a, r=r, x=x, before=value, after=narrowed),
            )
        inequality.report(report, "interpolation_inequality")
        monotone.report(report, "interpolation_monotonicity")

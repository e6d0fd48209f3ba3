"""
Command-line entry point.

    spatialpoll <command> [--config FILE] [--seed N] [--out-dir DIR] [--threads N] ...

Overrides given on the command line win over the scenario file. Exit status is 0 when every
check passes, 1 on a property violation and 2 on a configuration error.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from spatialpoll.errors import ConfigurationError, InvalidParameterError, SpatialPollError
from spatialpoll.experiments.commands import (
    BaseCommand,
    DriftCommands,
    FigureCommands,
    LemmaCommands,
    StabilityCommands,
    SteadyStateCommands,
)
from spatialpoll.experiments.report import CheckStatus, Report
from spatialpoll.utils.config import ConfigManager, ScenarioConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_CONFIG = 2

DEFAULT_CONFIG = Path("config.yaml")

CSV_COLUMNS = """\
CSV files written to --out-dir:
  figures          path_lambda_<λ>.csv: step, population
                   light_traffic_sweep.csv: r, simulated_mean, ci_half_width, cycles,
                   approximation
  stability-sweep  stability_sweep.csv: arrival_rate, load, r, regime, cycles,
                   cycle_length_mean, simulated_mean, ci_half_width, growth_slope
  stationary       stationary_histogram.csv: k, count
  laplace-check    laplace_residuals.csv: theta, residual, stderr
  tail-fit         tail_fit.csv: k, log_survival
Every command also writes <command>_report.yaml with the resolved scenario and seed.
"""

# Map command names to their handlers
COMMAND_HANDLERS: Dict[str, BaseCommand] = {}


def _build_command_map(handlers: Optional[List[BaseCommand]] = None) -> Dict[str, BaseCommand]:
    """Build mapping of command names to their handler instances."""
    if handlers is None:
        handlers = [
            LemmaCommands(),
            DriftCommands(),
            FigureCommands(),
            StabilityCommands(),
            SteadyStateCommands(),
        ]
    COMMAND_HANDLERS.clear()
    for handler in handlers:
        for command in handler.get_commands():
            COMMAND_HANDLERS[command.name] = handler
    return COMMAND_HANDLERS


def _kernel_width(value: str) -> Union[float, str]:
    if value == "auto":
        return value
    try:
        return float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number or 'auto', got {value!r}")


def _scenario_flags() -> argparse.ArgumentParser:
    """Flags shared by every subcommand; unset flags leave the scenario file untouched."""
    flags = argparse.ArgumentParser(add_help=False)
    run = flags.add_argument_group("run")
    run.add_argument("--config", type=Path, help="Scenario YAML file (default: ./config.yaml)")
    run.add_argument("--seed", type=int, help="Master random seed")
    run.add_argument("--out-dir", dest="out_dir", help="Directory for reports and CSV files")
    run.add_argument("--threads", type=int, help="Worker processes for sweeps")
    run.add_argument("-v", "--verbose", action="store_true", help="Debug logging")

    model = flags.add_argument_group("model")
    model.add_argument("--arrival-rate", dest="arrival_rate", type=float)
    model.add_argument("--scan-radius", dest="scan_radius", type=float)
    model.add_argument("--circumference", type=float)
    model.add_argument(
        "--distribution", choices=["exponential", "deterministic", "gamma", "empirical"]
    )
    model.add_argument("--mean-interpolling", dest="mean_interpolling", type=float)
    model.add_argument("--gamma-shape", dest="gamma_shape", type=float)
    model.add_argument("--kernel-width", dest="kernel_width", type=_kernel_width)

    lengths = flags.add_argument_group("run lengths and sweeps")
    lengths.add_argument("--steps", type=int)
    lengths.add_argument("--replications", type=int)
    lengths.add_argument("--min-cycles", dest="min_cycles", type=int)
    lengths.add_argument("--max-steps", dest="max_steps", type=int)
    lengths.add_argument("--corpus-size", dest="corpus_size", type=int)
    lengths.add_argument("--inner-samples", dest="inner_samples", type=int)
    lengths.add_argument("--arrival-rates", dest="arrival_rates", type=float, nargs="+")
    lengths.add_argument("--radii", type=float, nargs="+")
    lengths.add_argument("--thetas", type=float, nargs="+")
    return flags


OVERRIDE_KEYS = [
    "seed",
    "out_dir",
    "threads",
    "arrival_rate",
    "scan_radius",
    "circumference",
    "distribution",
    "mean_interpolling",
    "gamma_shape",
    "kernel_width",
    "steps",
    "replications",
    "min_cycles",
    "max_steps",
    "corpus_size",
    "inner_samples",
    "arrival_rates",
    "radii",
    "thetas",
]


def build_parser() -> argparse.ArgumentParser:
    if not COMMAND_HANDLERS:
        _build_command_map()
    parser = argparse.ArgumentParser(
        prog="spatialpoll",
        description="Simulation and drift verification for a greedy polling server on a circle",
        epilog=CSV_COLUMNS,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="command")
    flags = _scenario_flags()
    for handler in dict.fromkeys(COMMAND_HANDLERS.values()):
        for command in handler.get_commands():
            subparsers.add_parser(
                command.name,
                parents=[flags],
                help=command.description,
                description=command.description,
                epilog=CSV_COLUMNS,
                formatter_class=argparse.RawDescriptionHelpFormatter,
            )
    return parser


def setup_logging(verbose: bool = False) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), rich_tracebacks=True)],
        force=True,
    )


def resolve_config(args: argparse.Namespace) -> ScenarioConfig:
    """Scenario file (explicit, ./config.yaml, or defaults) with command-line overrides."""
    if args.config is not None:
        base = ConfigManager(str(args.config)).load()
    elif DEFAULT_CONFIG.exists():
        base = ConfigManager(str(DEFAULT_CONFIG)).load()
    else:
        logger.debug("No config.yaml found, using built-in defaults")
        base = ScenarioConfig()
    overrides: Dict[str, Any] = {key: getattr(args, key) for key in OVERRIDE_KEYS}
    return base.with_overrides(overrides)


def render_report(report: Report, handler: BaseCommand, console: Console) -> None:
    table = Table(title=f"{report.command} ({report.config.scenario}, seed {report.config.seed})")
    table.add_column("Check")
    table.add_column("Status")
    table.add_column("Detail")
    for check in report.checks:
        if check.status is CheckStatus.PASSED:
            status = handler.format_success(check.status.value)
        elif check.status is CheckStatus.FAILED:
            status = handler.format_error(check.status.value)
        else:
            status = handler.format_info(check.status.value)
        table.add_row(check.name, status, check.detail)
    if report.checks:
        console.print(table)

    if report.values:
        values = Table(title="Values")
        values.add_column("Name")
        values.add_column("Value")
        for name, value in report.values.items():
            values.add_row(name, f"{value:.6g}" if isinstance(value, float) else str(value))
        console.print(values)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose)
    console = Console()

    try:
        config = resolve_config(args)
        handler = COMMAND_HANDLERS.get(args.command)
        if handler is None:
            raise ConfigurationError(f"Unknown command: {args.command}")
        logger.info(f"Running {args.command} on scenario '{config.scenario}'")
        report = handler.execute(args.command, config)
    except (ConfigurationError, InvalidParameterError) as e:
        logger.error(str(e))
        return EXIT_CONFIG
    except SpatialPollError as e:
        logger.error(f"{args.command} could not complete: {e}")
        return EXIT_VIOLATION

    report.write(Path(config.out_dir))
    render_report(report, handler, console)
    if report.failed:
        console.print(handler.format_error(f"{len(report.failed)} check(s) failed"))
    else:
        console.print(handler.format_success("all checks passed"))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())

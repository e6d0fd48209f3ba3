"""
Unit tests for the command-line entry point.
"""

import pytest

from spatialpoll.experiments import cli
from spatialpoll.experiments.commands import LemmaCommands
from spatialpoll.experiments.commands.lemmas import unclamped_kernel

COMMANDS = [
    "verify-lemmas",
    "drift-certificate",
    "figures",
    "stability-sweep",
    "stationary",
    "laplace-check",
    "tail-fit",
]


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    """Run in an empty directory so no config.yaml is picked up."""
    monkeypatch.chdir(tmp_path)
    return tmp_path


@pytest.fixture
def restore_commands():
    yield
    cli._build_command_map()


class TestParser:
    """Test suite for the argument parser."""

    @pytest.mark.parametrize("command", COMMANDS)
    def test_subcommands(self, command):
        """Test every subcommand is registered."""
        args = cli.build_parser().parse_args([command])
        assert args.command == command
        assert args.arrival_rate is None

    def test_overrides(self):
        """Test scenario flags, list flags and the kernel width."""
        args = cli.build_parser().parse_args(
            ["stability-sweep", "--radii", "0.1", "0.2", "--kernel-width", "auto", "--seed", "4"]
        )
        assert args.radii == [0.1, 0.2]
        assert args.kernel_width == "auto"
        config = cli.resolve_config(args)
        assert config.radii == [0.1, 0.2]
        assert config.seed == 4

    def test_bad_kernel_width(self):
        """Test the kernel width must be a number or auto."""
        with pytest.raises(SystemExit):
            cli.build_parser().parse_args(["verify-lemmas", "--kernel-width", "wide"])

    def test_missing_command(self):
        """Test a subcommand is required."""
        with pytest.raises(SystemExit):
            cli.build_parser().parse_args([])


class TestMain:
    """Test suite for exit codes."""

    def test_success(self, workdir):
        """Test a passing run exits 0 and writes its report."""
        code = cli.main(["verify-lemmas", "--corpus-size", "5", "--out-dir", str(workdir)])
        assert code == cli.EXIT_OK
        assert (workdir / "verify-lemmas_report.yaml").exists()

    def test_config_file(self, workdir):
        """Test ./config.yaml is used when present and flags win over it."""
        (workdir / "config.yaml").write_text("scenario: local\ncorpus_size: 3\nseed: 1\n")
        args = cli.build_parser().parse_args(["verify-lemmas", "--seed", "2"])
        config = cli.resolve_config(args)
        assert config.scenario == "local"
        assert config.corpus_size == 3
        assert config.seed == 2

    def test_invalid_config(self, workdir):
        """Test an unknown key exits 2."""
        path = workdir / "bad.yaml"
        path.write_text("servers: 2\n")
        assert cli.main(["verify-lemmas", "--config", str(path)]) == cli.EXIT_CONFIG

    def test_missing_config(self, workdir):
        """Test a missing scenario file exits 2."""
        assert cli.main(["verify-lemmas", "--config", "nope.yaml"]) == cli.EXIT_CONFIG

    def test_negative_rate(self, workdir):
        """Test an invalid override exits 2."""
        assert cli.main(["drift-certificate", "--arrival-rate", "-1"]) == cli.EXIT_CONFIG

    def test_unstable_laplace_check(self, workdir):
        """Test stationary diagnostics at λs₁ ≥ 1 exit 2."""
        assert cli.main(["laplace-check", "--arrival-rate", "1.5"]) == cli.EXIT_CONFIG

    def test_violation(self, workdir, restore_commands):
        """Test a property violation exits 1 and dumps a counterexample."""
        cli._build_command_map([LemmaCommands(kernel=unclamped_kernel)])
        code = cli.main(["verify-lemmas", "--corpus-size", "20", "--out-dir", str(workdir)])
        assert code == cli.EXIT_VIOLATION
        assert list((workdir / "counterexamples").glob("verify-lemmas_*.txt"))

"""
Unit tests for BaseCommand functionality.
"""

from typing import List

import pandas as pd
import pytest

from spatialpoll.experiments.commands.base import BaseCommand, CommandSpec
from spatialpoll.experiments.report import Report
from spatialpoll.utils.config import ScenarioConfig


class ConcreteTestCommand(BaseCommand):
    """Concrete implementation of BaseCommand for testing."""

    def get_commands(self) -> List[CommandSpec]:
        return [CommandSpec(name="test-command", description="A test command")]

    def execute(self, command_name: str, config: ScenarioConfig) -> Report:
        if command_name != "test-command":
            raise ValueError(f"Unknown command: {command_name}")
        report = Report(command=command_name, config=config)
        report.values["message"] = self.format_success("Test executed")
        return report


class TestBaseCommand:
    """Test suite for BaseCommand base class."""

    @pytest.fixture
    def command(self):
        return ConcreteTestCommand()

    @pytest.fixture
    def config(self, tmp_path):
        return ScenarioConfig(out_dir=str(tmp_path / "out"))

    def test_format_success(self, command):
        """Test formatting success messages."""
        result = command.format_success("Operation completed")
        assert "✅" in result
        assert "Operation completed" in result

    def test_format_error(self, command):
        """Test formatting error messages."""
        result = command.format_error("Something went wrong")
        assert "❌" in result
        assert "Something went wrong" in result

    def test_format_info(self, command):
        assert command.format_info("Here is some information") == "Here is some information"

    def test_get_commands_returns_list(self, command):
        """Test that get_commands returns a list of specs."""
        commands = command.get_commands()
        assert isinstance(commands, list)
        assert len(commands) == 1
        assert commands[0].name == "test-command"

    def test_execute_returns_report(self, command, config):
        report = command.execute("test-command", config)
        assert isinstance(report, Report)
        assert report.values["message"].startswith("✅")

    def test_execute_unknown_command(self, command, config):
        with pytest.raises(ValueError):
            command.execute("missing", config)

    def test_write_csv(self, command, config):
        """Test write_csv creates the output directory and records the file."""
        report = Report(command="test-command", config=config)
        frame = pd.DataFrame({"step": [0, 1, 2], "population": [0, 1, 1]})

        path = command.write_csv(report, frame, "path.csv")

        assert path.exists()
        assert report.files == [path]
        assert pd.read_csv(path)["population"].tolist() == [0, 1, 1]

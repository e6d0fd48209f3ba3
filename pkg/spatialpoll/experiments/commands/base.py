"""
Base class for CLI commands.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from pathlib import Path
from typing import List

import pandas as pd

from spatialpoll.experiments.report import Report
from spatialpoll.utils.config import ScenarioConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CommandSpec:
    """Name and help text of one subcommand."""

    name: str
    description: str


class BaseCommand(ABC):
    """
    Base class for groups of CLI subcommands.

    Each command class should:
    1. Declare its subcommands in get_commands()
    2. Dispatch in execute() and return a Report
    3. Record property violations as failed checks instead of raising
    """

    def __init__(self):
        """Initialize the command."""
        self.logger = logger

    @abstractmethod
    def get_commands(self) -> List[CommandSpec]:
        pass

    @abstractmethod
    def execute(self, command_name: str, config: ScenarioConfig) -> Report:
        """
        Run one subcommand.

        Raises:
            ValueError: If command_name is not supported
        """
        pass

    def write_csv(self, report: Report, frame: pd.DataFrame, filename: str) -> Path:
        """Write a CSV under the scenario output directory and list it in the report."""
        out_dir = Path(report.config.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / filename
        frame.to_csv(path, index=False)
        report.files.append(path)
        self.logger.info(f"Wrote {len(frame)} rows to {path}")
        return path

    def format_success(self, message: str) -> str:
        """Helper to format success lines."""
        return f"✅ {message}"

    def format_error(self, message: str) -> str:
        """Helper to format failure lines."""
        return f"❌ {message}"

    def format_info(self, message: str) -> str:
        """Helper to format informational lines."""
        return message

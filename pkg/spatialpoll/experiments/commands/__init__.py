"""
CLI commands for spatialpoll.
Each class groups related subcommands and returns a Report.
"""

from spatialpoll.experiments.commands.base import BaseCommand, CommandSpec
from spatialpoll.experiments.commands.drift import DriftCommands
from spatialpoll.experiments.commands.figures import FigureCommands
from spatialpoll.experiments.commands.lemmas import LemmaCommands
from spatialpoll.experiments.commands.stability import StabilityCommands
from spatialpoll.experiments.commands.steady_state import SteadyStateCommands

__all__ = [
    "BaseCommand",
    "CommandSpec",
    "LemmaCommands",
    "DriftCommands",
    "FigureCommands",
    "StabilityCommands",
    "SteadyStateCommands",
]

"""
Experiment commands, reports and the command-line entry point.
"""

from spatialpoll.experiments.report import CheckResult, CheckStatus, Report

__all__ = ["CheckResult", "CheckStatus", "Report"]

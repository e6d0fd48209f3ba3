"""
Check results and command reports.

Every report written to disk carries the resolved scenario and seed, so a run can be repeated
from its report alone.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import yaml

from spatialpoll.utils.config import ScenarioConfig

logger = logging.getLogger(__name__)


def _plain(value: Any) -> Any:
    """Numpy scalars and containers as YAML-safe builtins."""
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


class CheckStatus(str, Enum):
    PASSED = "passed"
    FAILED = "failed"
    SKIPPED = "skipped"


@dataclass
class CheckResult:
    name: str
    status: CheckStatus
    detail: str = ""
    counterexample: Optional[str] = None


@dataclass
class Report:
    """Outcome of one command run."""

    command: str
    config: ScenarioConfig
    checks: List[CheckResult] = field(default_factory=list)
    values: Dict[str, Any] = field(default_factory=dict)
    files: List[Path] = field(default_factory=list)

    def check(
        self, name: str, passed: bool, detail: str = "", counterexample: Optional[str] = None
    ) -> CheckResult:
        """Record a pass/fail check; a counterexample is kept only for failures."""
        status = CheckStatus.PASSED if passed else CheckStatus.FAILED
        result = CheckResult(name, status, detail, None if passed else counterexample)
        self.checks.append(result)
        if passed:
            logger.debug(f"Check {name} passed {detail}")
        else:
            logger.error(f"Check {name} failed: {detail}")
        return result

    def skip(self, name: str, detail: str) -> CheckResult:
        result = CheckResult(name, CheckStatus.SKIPPED, detail)
        self.checks.append(result)
        logger.warning(f"Check {name} skipped: {detail}")
        return result

    @property
    def failed(self) -> List[CheckResult]:
        return [c for c in self.checks if c.status is CheckStatus.FAILED]

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "seed": self.config.seed,
            "config": yaml.safe_load(self.config.to_canonical_text()),
            "values": _plain(self.values),
            "checks": [
                {"name": c.name, "status": c.status.value, "detail": c.detail}
                for c in self.checks
            ],
            "files": [str(path) for path in self.files],
        }

    def write(self, out_dir: Path) -> Path:
        """Write the YAML report and one dump file per counterexample."""
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        for c in self.failed:
            if c.counterexample is None:
                continue
            dump = out_dir / "counterexamples" / f"{self.command}_{c.name}.txt"
            dump.parent.mkdir(parents=True, exist_ok=True)
            dump.write_text(c.counterexample)
            self.files.append(dump)

        path = out_dir / f"{self.command}_report.yaml"
        with open(path, "w") as f:
            yaml.safe_dump(self.to_dict(), f, sort_keys=False, allow_unicode=True)
        logger.info(f"Report written to {path}")
        return path

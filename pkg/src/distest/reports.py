"""Run reports, tradeoff curves, verification reports, and CSV/JSON emission.

Emission is deterministic: fixed headers and field order, '.' decimals,
'\\n' line ends, floats at 17 significant digits, and a config echo with the
seed in every JSON document. Same config + seed => byte-identical files.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable

import numpy as np

from .errors import ConfigurationError


def fmt_float(x: float) -> str:
    return format(float(x), ".17g")


@dataclass
class RunReport:
    """One protocol execution: estimate, exact bit count, diagnostics."""

    estimate: np.ndarray
    bits_used: int
    diagnostics: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.estimate = np.atleast_1d(np.asarray(self.estimate, dtype=np.float64))


@dataclass(frozen=True)
class TradeoffRow:
    alpha: float
    bits_total: int
    mse_estimate: float
    mse_stderr: float
    trials: int


@dataclass
class TradeoffCurve:
    rows: list[TradeoffRow]
    config: dict[str, Any] = field(default_factory=dict)

    CSV_HEADER = "alpha,bits_total,mse_estimate,mse_stderr,trials"

    def to_csv(self) -> str:
        lines = [self.CSV_HEADER]
        for r in self.rows:
            lines.append(
                f"{fmt_float(r.alpha)},{r.bits_total},{fmt_float(r.mse_estimate)},"
                f"{fmt_float(r.mse_stderr)},{r.trials}"
            )
        return "\n".join(lines) + "\n"

    def to_json_obj(self) -> dict[str, Any]:
        return {
            "config": self.config,
            "rows": [
                {
                    "alpha": r.alpha,
                    "bits_total": r.bits_total,
                    "mse_estimate": r.mse_estimate,
                    "mse_stderr": r.mse_stderr,
                    "trials": r.trials,
                }
                for r in self.rows
            ],
        }


@dataclass(frozen=True)
class CheckRow:
    """One verified inequality: measured value vs bound, with the slack
    convention slack >= -tolerance <=> pass."""

    name: str
    measured: float
    bound: float
    slack: float
    tolerance: float
    passed: bool
    tag: str = ""

    @staticmethod
    def from_slack(
        name: str, measured: float, bound: float, slack: float, tolerance: float, tag: str = ""
    ) -> "CheckRow":
        ok = bool(slack >= -tolerance) and not math.isnan(slack)
        return CheckRow(name, float(measured), float(bound), float(slack), tolerance, ok, tag)


@dataclass
class VerificationReport:
    suite: str
    rows: list[CheckRow]
    config: dict[str, Any] = field(default_factory=dict)

    CSV_HEADER = "check,measured,bound,slack,tolerance,pass,tag"

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def to_csv(self) -> str:
        lines = [self.CSV_HEADER]
        for r in self.rows:
            lines.append(
                f"{r.name},{fmt_float(r.measured)},{fmt_float(r.bound)},"
                f"{fmt_float(r.slack)},{fmt_float(r.tolerance)},"
                f"{'true' if r.passed else 'false'},{r.tag}"
            )
        return "\n".join(lines) + "\n"

    def to_json_obj(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "config": self.config,
            "passed": self.passed,
            "checks": [
                {
                    "name": r.name,
                    "measured": r.measured,
                    "bound": r.bound,
                    "slack": r.slack,
                    "tolerance": r.tolerance,
                    "pass": r.passed,
                    "tag": r.tag,
                }
                for r in self.rows
            ],
        }

    def summary_lines(self) -> Iterable[str]:
        for r in self.rows:
            yield (
                f"[{'PASS' if r.passed else 'FAIL'}] {self.suite}/{r.name}: "
                f"measured={r.measured:.6g} bound={r.bound:.6g} slack={r.slack:.3g}"
            )


def emit(obj: Any, fmt: str, path: str | Path) -> Path:
    """Write a curve or report to CSV or JSON; returns the path written."""
    path = Path(path)
    if fmt not in ("csv", "json"):
        raise ConfigurationError(f"unknown output format {fmt!r}")
    if fmt == "csv":
        text = obj.to_csv()
    else:
        text = json.dumps(obj.to_json_obj(), indent=2, sort_keys=True, allow_nan=True)
        text += "\n"
    try:
        path.write_text(text)
    except OSError as exc:
        raise ConfigurationError(f"cannot write {path}: {exc}") from exc
    return path

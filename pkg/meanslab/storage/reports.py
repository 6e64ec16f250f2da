"""File persistence for suite reports and counterexamples."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Mapping

from meanslab.errors import ValidationError
from meanslab.harness.instances import instance_from_dict
from meanslab.models import CheckInstance, CheckReport, CheckSummary, SuiteResult

SUMMARY_COLUMNS = ("check", "trials", "failures", "errors", "min_margin")


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def report_payload(result: SuiteResult) -> Dict[str, Any]:
    """Report body; wall time is left out so identical runs give identical bytes."""

    return {
        "suite": list(result.names),
        "seed": result.seed,
        "summary": {name: entry.to_dict() for name, entry in result.summary.items()},
        "reports": [report.to_dict() for report in result.reports],
    }


def write_report(path: Path, result: SuiteResult) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(canonical_json(report_payload(result)), encoding="utf-8")
    return path


def write_summary_csv(path: Path, summary: Mapping[str, CheckSummary]) -> Path:
    """One row per check with trials, failures, errors and min margin."""

    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(SUMMARY_COLUMNS)
        for name, entry in summary.items():
            margin = "" if entry.min_margin is None else repr(entry.min_margin)
            writer.writerow([name, entry.trials, entry.failures, entry.errors, margin])
    return path


@dataclass(slots=True)
class Counterexample:
    """A failing check with the instance needed to replay it."""

    name: str
    params: Dict[str, Any]
    tolerance: float
    instance: CheckInstance
    report: Dict[str, Any]


def write_counterexample(directory: Path, report: CheckReport) -> Path:
    """Write <check>-<seed>.json for a failed report carrying its instance."""

    if not report.artifacts or "instance" not in report.artifacts:
        raise ValidationError(f"Report for {report.name} (seed {report.seed}) has no serialized instance")
    payload = {
        "check": report.name,
        "params": report.params,
        "tolerance": report.artifacts.get("tolerance", 1e-9),
        "instance": report.artifacts["instance"],
        "report": report.to_dict(),
    }
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"{report.name}-{report.seed}.json"
    path.write_text(canonical_json(payload), encoding="utf-8")
    return path


def load_counterexample(path: Path) -> Counterexample:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"{path}: {exc}") from exc
    try:
        return Counterexample(
            name=str(data["check"]),
            params=dict(data.get("params", {})),
            tolerance=float(data.get("tolerance", 1e-9)),
            instance=instance_from_dict(data["instance"]),
            report=dict(data.get("report", {})),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(f"{path}: malformed counterexample ({exc})") from exc

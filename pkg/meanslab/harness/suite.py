"""Batch runner: seeded instances for every (check, trial) job, executed in parallel."""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Sequence, Tuple

from meanslab.config import SolverConfig
from meanslab.errors import MeansLabError, ValidationError
from meanslab.harness.checks import DEFAULT_TOLERANCE, error_report, get_check, merge_params, run_check
from meanslab.harness.instances import generate_instance, instance_to_dict, job_seed
from meanslab.models import CheckReport, CheckSummary, SuiteResult

logger = logging.getLogger("meanslab.suite")
failure_logger = logging.getLogger("meanslab.failures")


@dataclass(frozen=True, slots=True)
class SuiteJob:
    """One check on one seeded instance; ``index`` fixes its place in the report."""

    index: int
    name: str
    trial: int
    seed: int
    commuting: bool


def is_twin_trial(trial: int, twin_every: int) -> bool:
    return twin_every > 0 and trial % twin_every == twin_every - 1


def plan_jobs(names: Sequence[str], trials: int, seed: int, twin_every: int = 0) -> List[SuiteJob]:
    """Jobs ordered by check name then trial, each twin right after its trial."""

    layout: List[Tuple[str, int, bool]] = []
    for name in names:
        for trial in range(trials):
            layout.append((name, trial, False))
            if is_twin_trial(trial, twin_every):
                layout.append((name, trial, True))
    return [
        SuiteJob(index=index, name=name, trial=trial, seed=job_seed(seed, index), commuting=commuting)
        for index, (name, trial, commuting) in enumerate(layout)
    ]


def summarize(names: Sequence[str], reports: Sequence[CheckReport]) -> Dict[str, CheckSummary]:
    summary = {name: CheckSummary(name=name) for name in names}
    for report in reports:
        entry = summary[report.name]
        entry.trials += 1
        if report.error is not None:
            entry.errors += 1
            continue
        if not report.holds:
            entry.failures += 1
        if entry.min_margin is None or report.margin < entry.min_margin:
            entry.min_margin = report.margin
    return summary


def run_suite(
    names: Sequence[str],
    trials: int,
    dims: Tuple[int, int] = (2, 6),
    n_range: Tuple[int, int] = (2, 5),
    bounds: Sequence[Tuple[float, float]] = ((1.0, 2.0), (0.5, 4.0), (1.0, 16.0)),
    seed: int = 0,
    *,
    solver: SolverConfig | None = None,
    tolerance: float = DEFAULT_TOLERANCE,
    jobs: int = 1,
    twin_every: int = 0,
    params: Mapping[str, Mapping[str, Any]] | None = None,
) -> SuiteResult:
    """Run every named check on ``trials`` seeded instances.

    Job seeds derive from (seed, job index), so reports are identical for any
    number of workers. A check that raises is recorded as an error report and
    the suite continues.
    """
    if trials < 0:
        raise ValidationError(f"trials must be non-negative, got {trials}")
    if jobs < 1:
        raise ValidationError(f"jobs must be at least 1, got {jobs}")
    params = params or {}
    for name in names:
        merge_params(get_check(name), params.get(name))
    solver = solver or SolverConfig()
    plan = plan_jobs(names, trials, seed, twin_every)

    def execute(job: SuiteJob) -> CheckReport:
        instance = generate_instance(job.seed, dims, n_range, bounds, commuting=job.commuting)
        check_params = params.get(job.name)
        try:
            report = run_check(job.name, instance, check_params, solver, tolerance)
        except MeansLabError as exc:
            report = error_report(job.name, instance, check_params, exc)
        if report.failed:
            report.artifacts = {"instance": instance_to_dict(instance), "tolerance": tolerance}
            detail = report.error or f"margin {report.margin:.3e}"
            failure_logger.warning(f"{job.name} seed={job.seed} commuting={job.commuting}: {detail}")
        return report

    started = time.perf_counter()
    for name in names:
        logger.info(f"check {name}: {trials} trials")
    if jobs == 1:
        reports = [execute(job) for job in plan]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(execute, plan))

    result = SuiteResult(names=list(names), seed=seed, reports=reports)
    result.summary = summarize(names, reports)
    result.wall_time = time.perf_counter() - started
    for name, entry in result.summary.items():
        logger.info(f"check {name}: {entry.trials} reports, {entry.failures} failures, {entry.errors} errors")
    return result

"""Verification suite command for meanslab CLI."""

import argparse
import logging
from pathlib import Path
from typing import List, Optional, Tuple

from rich.console import Console

from meanslab.config import AppConfig, resolve_seed
from meanslab.errors import ValidationError
from meanslab.harness.checks import resolve_names
from meanslab.harness.logging_config import setup_logging
from meanslab.harness.suite import run_suite
from meanslab.services.validators import require, validate_bounds
from meanslab.storage.reports import write_counterexample, write_report, write_summary_csv
from meanslab.ui.formatters import create_summary_table

console = Console()
logger = logging.getLogger("meanslab.suite")

EXIT_CHECK_FAILED = 3


def parse_range(text: Optional[str], label: str, default: Tuple[int, int]) -> Tuple[int, int]:
    """Parse "a-b" or a single "a" into an inclusive integer range."""

    if text is None:
        return default
    parts = text.split("-")
    try:
        if len(parts) == 1:
            low = high = int(parts[0])
        elif len(parts) == 2:
            low, high = int(parts[0]), int(parts[1])
        else:
            raise ValueError(text)
    except ValueError as exc:
        raise ValidationError(f"--{label}: expected a or a-b, got {text!r}") from exc
    if low < 1 or high < low:
        raise ValidationError(f"--{label}: invalid range {low}-{high}")
    return low, high


def _bounds(args: argparse.Namespace, config: AppConfig) -> List[Tuple[float, float]]:
    if args.m is None and args.M is None:
        return list(config.harness.bounds)
    if args.m is None or args.M is None:
        raise ValidationError("--m and --M must be given together")
    require(validate_bounds(args.m, args.M))
    return [(args.m, args.M)]


def handle_verify(args: argparse.Namespace, config: AppConfig) -> int:
    """Handle `meanslab verify`: run the suite, write the report, print the summary."""

    names = resolve_names(args.suite)
    trials = config.harness.trials if args.trials is None else args.trials
    dims = parse_range(args.dim, "dim", config.harness.dims)
    n_range = parse_range(args.n, "n", config.harness.n_range)
    bounds = _bounds(args, config)
    seed = resolve_seed(args.seed, config)
    jobs = config.harness.jobs if args.jobs is None else args.jobs

    setup_logging(config.logging)
    logger.info(f"verify suite={','.join(names)} trials={trials} seed={seed} jobs={jobs}")

    result = run_suite(
        names,
        trials,
        dims,
        n_range,
        bounds,
        seed,
        solver=config.solver,
        tolerance=config.harness.tolerance,
        jobs=jobs,
        twin_every=config.harness.twin_every,
    )

    report_path = Path(args.report) if args.report else config.harness.report_dir / f"verify-{seed}.json"
    write_report(report_path, result)
    if args.csv:
        write_summary_csv(Path(args.csv), result.summary)

    failed = [report for report in result.reports if report.failed]
    if failed:
        directory = report_path.parent / "counterexamples"
        for report in failed:
            write_counterexample(directory, report)
        logger.warning(f"{len(failed)} failing reports written to {directory}")

    console.print(create_summary_table(result.summary, result.wall_time, config.harness.tolerance))
    console.print(f"[dim]Report: {report_path}[/dim]")
    if failed:
        console.print(f"[red]{len(failed)} check failures[/red]")
        return EXIT_CHECK_FAILED
    console.print("[green]All checks hold[/green]")
    return 0

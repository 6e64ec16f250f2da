"""Counterexample replay command for meanslab CLI."""

import argparse
import sys
from pathlib import Path

from meanslab.config import AppConfig
from meanslab.harness.checks import run_check
from meanslab.harness.logging_config import setup_logging
from meanslab.storage.reports import canonical_json, load_counterexample

EXIT_CHECK_FAILED = 3


def handle_replay(args: argparse.Namespace, config: AppConfig) -> int:
    """Re-run a serialized failing instance and print the fresh report.

    Returns 0 when the check now holds, 3 when it still fails.
    """
    setup_logging(config.logging)
    counterexample = load_counterexample(Path(args.file))
    report = run_check(
        counterexample.name,
        counterexample.instance,
        counterexample.params,
        config.solver,
        counterexample.tolerance,
    )
    sys.stdout.write(canonical_json(report.to_dict()))
    return EXIT_CHECK_FAILED if report.failed else 0

"""Check registry listing for meanslab CLI."""

import argparse

from rich.console import Console

from meanslab.config import AppConfig
from meanslab.harness.checks import REGISTRY
from meanslab.ui.formatters import create_checks_table

console = Console()


def handle_checks(args: argparse.Namespace, config: AppConfig) -> int:
    console.print(create_checks_table(REGISTRY))
    console.print("[dim]'meanslab verify --suite all' runs the checks marked yes[/dim]")
    return 0

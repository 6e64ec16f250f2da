"""Rich formatting utilities for the meanslab CLI."""

import math
from typing import Mapping, Optional

from rich.table import Table

from meanslab.harness.checks import CheckDefinition
from meanslab.models import CheckSummary


def format_scalar(value: float) -> str:
    """15 significant digits, e.g. 1.125 or -99."""

    return f"{value:.15g}"


def format_margin(value: Optional[float], tolerance: float = 1e-9) -> str:
    """Format a relative margin with color.

    Returns: Green when the inequality holds within tolerance, red otherwise.
    """
    if value is None or not math.isfinite(value):
        return "[red]n/a[/red]"
    if value >= -tolerance:
        return f"[green]{value:+.3e}[/green]"
    return f"[red]{value:+.3e}[/red]"


def create_summary_table(
    summary: Mapping[str, CheckSummary], wall_time: Optional[float] = None, tolerance: float = 1e-9
) -> Table:
    """Create Rich table with per-check trials, min margin, failures and errors."""
    caption = f"wall time {wall_time:.2f}s (not part of the report)" if wall_time is not None else None
    table = Table(title="Verification Summary", show_header=True, header_style="bold cyan", caption=caption)

    table.add_column("Check", style="cyan")
    table.add_column("Trials", justify="right")
    table.add_column("Min margin", justify="right")
    table.add_column("Failures", justify="right")
    table.add_column("Errors", justify="right")

    for name, entry in summary.items():
        failures = f"[red]{entry.failures}[/red]" if entry.failures else "0"
        errors = f"[red]{entry.errors}[/red]" if entry.errors else "0"
        margin = format_margin(entry.min_margin, tolerance) if entry.trials else "-"
        table.add_row(name, str(entry.trials), margin, failures, errors)

    return table


def create_checks_table(registry: Mapping[str, CheckDefinition]) -> Table:
    table = Table(title="Registered Checks", show_header=True, header_style="bold cyan")

    table.add_column("Name", style="cyan", no_wrap=True)
    table.add_column("In 'all'", justify="center")
    table.add_column("Defaults", style="yellow")
    table.add_column("Description", style="white")

    for name, definition in registry.items():
        defaults = ", ".join(f"{key}={value}" for key, value in definition.defaults.items()) or "-"
        table.add_row(name, "yes" if definition.in_default else "no", defaults, definition.description)

    return table

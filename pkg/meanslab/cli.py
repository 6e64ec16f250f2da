"""Main CLI interface for meanslab."""

import argparse
from pathlib import Path
from typing import Callable, Dict, List, Optional

from rich.console import Console
from rich.markup import escape

from meanslab import __version__
from meanslab.config import AppConfig, load_config
from meanslab.errors import MeansLabError, SolverError

# Import command handlers
from meanslab.commands.checks import handle_checks
from meanslab.commands.compute import handle_compute
from meanslab.commands.const import CONSTANTS, handle_const
from meanslab.commands.probe import handle_probe
from meanslab.commands.replay import handle_replay
from meanslab.commands.verify import handle_verify

error_console = Console(stderr=True)

EXIT_ERROR = 1
EXIT_SOLVER = 2

Handler = Callable[[argparse.Namespace, AppConfig], int]

HANDLERS: Dict[str, Handler] = {
    "compute": handle_compute,
    "const": handle_const,
    "verify": handle_verify,
    "replay": handle_replay,
    "checks": handle_checks,
    "probe": handle_probe,
}


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so usage errors map to exit 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(f"{self.prog}: {message}")


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="meanslab", description="Operator means and Ando-Hiai type inequality checks")
    parser.add_argument("--version", action="version", version=f"meanslab {__version__}")
    parser.add_argument("--config", help="YAML config file (default ~/.meanslab/config.yml)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    compute = sub.add_parser("compute", help="Compute a mean from a JSON job")
    compute.add_argument("job", nargs="?", default="-", help="Job file, or - for stdin")

    const = sub.add_parser("const", help="Evaluate K, S, beta or gamma")
    const.add_argument("name", choices=sorted(CONSTANTS))
    const.add_argument("values", nargs="*", help="Numeric arguments")

    verify = sub.add_parser("verify", help="Run the randomized inequality suite")
    verify.add_argument("--suite", default="all", help="Comma-separated check names or 'all'")
    verify.add_argument("--trials", type=int, help="Instances per check")
    verify.add_argument("--dim", help="Dimension range a-b")
    verify.add_argument("--n", help="Number of matrices a-b")
    verify.add_argument("--m", type=float, help="Lower spectral bound")
    verify.add_argument("--M", type=float, help="Upper spectral bound")
    verify.add_argument("--seed", type=int, help="Master seed (default MEANSLAB_SEED or config)")
    verify.add_argument("--report", help="Report path (default <report_dir>/verify-<seed>.json)")
    verify.add_argument("--csv", help="Also write the summary as CSV")
    verify.add_argument("--jobs", type=int, help="Worker threads")

    replay = sub.add_parser("replay", help="Re-run a counterexample file")
    replay.add_argument("file")

    sub.add_parser("checks", help="List registered checks")

    probe = sub.add_parser("probe", help="Tightness probe for reverse information monotonicity")
    probe.add_argument("--m", type=float, required=True)
    probe.add_argument("--M", type=float, required=True)
    probe.add_argument("--seeds", type=int, default=10_000)
    probe.add_argument("--alpha", type=float, default=1.0)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for meanslab CLI.

    Exit codes: 0 success, 1 invalid input or domain error, 2 solver
    non-convergence, 3 a check failed.
    """
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as e:
        error_console.print(f"[red]Error: {escape(str(e))}[/red]")
        return EXIT_ERROR

    try:
        config = load_config(Path(args.config).expanduser() if args.config else None)
        return HANDLERS[args.command](args, config)
    except SolverError as e:
        error_console.print(f"[red]Solver error: {escape(str(e))}[/red]")
        return EXIT_SOLVER
    except MeansLabError as e:
        error_console.print(f"[red]Error: {escape(str(e))}[/red]")
        return EXIT_ERROR
    except OSError as e:
        error_console.print(f"[red]Error: {escape(str(e))}[/red]")
        return EXIT_ERROR

"""Constant evaluation commands for meanslab CLI."""

import argparse
import sys
from typing import Callable, Dict, List, Tuple

from meanslab.config import AppConfig
from meanslab.errors import ValidationError
from meanslab.services import constants
from meanslab.ui.formatters import format_scalar

CONSTANTS: Dict[str, Tuple[Callable[..., float], Tuple[str, ...]]] = {
    "kantorovich": (constants.kantorovich, ("h", "p")),
    "specht": (constants.specht, ("h",)),
    "beta": (constants.beta, ("m", "M", "alpha")),
    "gamma": (constants.gamma, ("m", "M", "r", "alpha")),
}


def _parse_values(name: str, raw: List[str]) -> List[float]:
    _, params = CONSTANTS[name]
    if len(raw) != len(params):
        raise ValidationError(f"{name} takes {len(params)} arguments ({' '.join(params)}), got {len(raw)}")
    values = []
    for label, text in zip(params, raw):
        try:
            values.append(float(text))
        except ValueError as exc:
            raise ValidationError(f"{name}: {label} must be a number, got {text!r}") from exc
    return values


def handle_const(args: argparse.Namespace, config: AppConfig) -> int:
    """Handle `meanslab const NAME ARGS...`.

    Examples:
        meanslab const kantorovich 2 2   -> 1.125
        meanslab const beta 1 4 1        -> 1
    """
    if args.name not in CONSTANTS:
        raise ValidationError(f"Unknown constant {args.name!r}; choose from {', '.join(CONSTANTS)}")
    func, _ = CONSTANTS[args.name]
    value = func(*_parse_values(args.name, args.values))
    sys.stdout.write(format_scalar(value) + "\n")
    return 0

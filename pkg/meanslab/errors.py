"""Exception hierarchy for meanslab."""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from meanslab.models import SolveTrace


class MeansLabError(Exception):
    """Base class for every error raised by meanslab."""


class ValidationError(MeansLabError, ValueError):
    """Input has the wrong shape, dimension, or value."""


class ConfigError(ValidationError):
    """Configuration file could not be interpreted."""


class DomainError(MeansLabError, ValueError):
    """A scalar function or constant is undefined at the given value."""

    def __init__(self, message: str, value: float | None = None) -> None:
        super().__init__(message)
        self.value = value


class NumericError(MeansLabError, ArithmeticError):
    """A LAPACK routine failed to converge."""


class SolverError(MeansLabError, RuntimeError):
    """Fixed-point iteration did not reach the requested tolerance."""

    def __init__(self, message: str, trace: "SolveTrace") -> None:
        super().__init__(message)
        self.trace = trace

"""Input validation for matrices, weights, maps and solver settings."""

from __future__ import annotations

from typing import TYPE_CHECKING, Iterable, Sequence

import numpy as np

from meanslab.errors import ValidationError

if TYPE_CHECKING:
    from meanslab.config import SolverConfig

SYMMETRY_TOL = 1e-12
WEIGHT_SUM_TOL = 1e-12
ISOMETRY_TOL = 1e-10


def require(result: tuple[bool, str]) -> None:
    """Raise ValidationError when a validator reports failure."""

    is_valid, message = result
    if not is_valid:
        raise ValidationError(message)


def validate_square(entries: np.ndarray) -> tuple[bool, str]:
    """Check that entries form a finite, non-empty square matrix.

    Args:
        entries: Candidate matrix

    Returns:
        Tuple of (is_valid, error_message)
    """
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        return False, f"Matrix must be square, got shape {entries.shape}"
    if entries.shape[0] == 0:
        return False, "Matrix must have dimension at least 1"
    if not np.all(np.isfinite(entries)):
        return False, "Matrix entries must be finite"
    return True, ""


def validate_symmetric(entries: np.ndarray, tol: float = SYMMETRY_TOL) -> tuple[bool, str]:
    """Check |e[i][j] - e[j][i]| <= tol * max(1, max|e|).

    Args:
        entries: Square matrix
        tol: Relative symmetry tolerance

    Returns:
        Tuple of (is_valid, error_message)
    """
    scale = max(1.0, float(np.max(np.abs(entries))))
    asymmetry = float(np.max(np.abs(entries - entries.T)))
    if asymmetry > tol * scale:
        i, j = np.unravel_index(int(np.argmax(np.abs(entries - entries.T))), entries.shape)
        return (
            False,
            f"Matrix is not symmetric: |e[{i}][{j}] - e[{j}][{i}]| = {asymmetry:.3e} exceeds {tol * scale:.3e}",
        )
    return True, ""


def validate_weights(values: Sequence[float]) -> tuple[bool, str]:
    """Check that values form a probability vector."""

    if len(values) == 0:
        return False, "Weights must not be empty"
    array = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(array)):
        return False, "Weights must be finite"
    if np.any(array < 0):
        index = int(np.argmin(array))
        return False, f"Weights must be nonnegative, w[{index}] = {array[index]}"
    total = float(array.sum())
    if abs(total - 1.0) > WEIGHT_SUM_TOL:
        return False, f"Weights must sum to 1 (got {total!r})"
    return True, ""


def validate_bounds(m: float, M: float, *, strict: bool = True) -> tuple[bool, str]:
    """Check 0 < m < M (or m <= M when strict is False)."""

    if not (np.isfinite(m) and np.isfinite(M)):
        return False, f"Bounds must be finite, got m={m}, M={M}"
    if m <= 0:
        return False, f"Lower bound must be positive, got m={m}"
    if strict and not m < M:
        return False, f"Bounds need m < M, got m={m}, M={M}"
    if not m <= M:
        return False, f"Bounds need m <= M, got m={m}, M={M}"
    return True, ""


def validate_same_dimension(dims: Iterable[int]) -> tuple[bool, str]:
    """Check that all operands share one dimension."""

    unique = sorted(set(dims))
    if len(unique) > 1:
        return False, f"Dimension mismatch: got dimensions {unique}"
    return True, ""


def validate_lengths(weights: int, matrices: int) -> tuple[bool, str]:
    if weights != matrices:
        return False, f"Length mismatch: {weights} weights for {matrices} matrices"
    if matrices == 0:
        return False, "At least one matrix is required"
    return True, ""


def validate_isometry(V: np.ndarray, tol: float = ISOMETRY_TOL) -> tuple[bool, str]:
    """Check V^T V = I_k for a dim x k matrix with k <= dim."""

    if V.ndim != 2 or V.shape[1] == 0:
        return False, f"Isometry must be a non-empty 2-D array, got shape {V.shape}"
    if V.shape[1] > V.shape[0]:
        return False, f"Isometry needs k <= dim, got shape {V.shape}"
    defect = float(np.max(np.abs(V.T @ V - np.eye(V.shape[1]))))
    if defect > tol:
        return False, f"V is not an isometry: max|V^T V - I| = {defect:.3e}"
    return True, ""


def validate_blocks(blocks: Sequence[Sequence[int]], dim: int) -> tuple[bool, str]:
    """Check that blocks partition range(dim)."""

    flat = [int(index) for block in blocks for index in block]
    if any(len(block) == 0 for block in blocks):
        return False, "Pinching blocks must be non-empty"
    if sorted(flat) != list(range(dim)):
        return False, f"Pinching blocks must partition 0..{dim - 1}, got {[list(b) for b in blocks]}"
    return True, ""


def validate_solver_config(config: "SolverConfig") -> tuple[bool, str]:
    """Check solver tolerance, iteration cap and damping."""

    if not config.tol > 0:
        return False, f"tol must be positive, got {config.tol}"
    if config.max_iter < 1:
        return False, f"max_iter must be at least 1, got {config.max_iter}"
    if not 0 < config.damping <= 1:
        return False, f"damping must lie in (0, 1], got {config.damping}"
    if config.karcher_step not in ("adaptive", "fixed"):
        return False, f"karcher_step must be 'adaptive' or 'fixed', got {config.karcher_step!r}"
    return True, ""


def validate_interval(
    value: float, name: str, low: float, high: float, *, low_open: bool = False, high_open: bool = False
) -> tuple[bool, str]:
    """Check that a scalar parameter lies in the given interval."""

    below = value <= low if low_open else value < low
    above = value >= high if high_open else value > high
    if below or above or not np.isfinite(value):
        left = "(" if low_open else "["
        right = ")" if high_open else "]"
        return False, f"{name} must lie in {left}{low:g}, {high:g}{right}, got {value}"
    return True, ""

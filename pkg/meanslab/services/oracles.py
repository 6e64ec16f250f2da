"""Independent scalar oracles for the constants and for means of commuting inputs."""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from meanslab.errors import ValidationError
from meanslab.models import MeanTwoSpec, NMeanSpec
from meanslab.services.means2 import representing_function
from meanslab.services.validators import require, validate_bounds

GRID_STEP = 1e-6
MAX_GRID_POINTS = 2_000_001


def _grid_extremum(F: Callable[[np.ndarray], np.ndarray], low: float, high: float, maximize: bool) -> float:
    """Extremum of F on [low, high] from a fine grid refined by bounded scalar search."""

    count = min(int(np.ceil((high - low) / GRID_STEP)) + 1, MAX_GRID_POINTS)
    grid = np.linspace(low, high, count)
    sign = 1.0 if maximize else -1.0
    values = sign * F(grid)
    best = int(np.argmax(values))
    left = grid[max(best - 1, 0)]
    right = grid[min(best + 1, count - 1)]
    best_value = float(values[best])
    if right > left:
        result = minimize_scalar(
            lambda t: -sign * float(F(np.array([t]))[0]),
            bounds=(left, right),
            method="bounded",
            options={"xatol": 1e-14},
        )
        best_value = max(best_value, -float(result.fun))
    return sign * best_value


def beta_oracle(m: float, M: float, alpha: float) -> float:
    """max over t in [m, M] of t - alpha ((M + m - t) / (M m))^{-1}."""

    require(validate_bounds(m, M))
    return _grid_extremum(lambda t: t - alpha * M * m / (M + m - t), m, M, maximize=True)


def gamma_oracle(m: float, M: float, r: float, alpha: float) -> float:
    """Extremum over [m, M] of the chord gap F(t) = a t + b - alpha t^r.

    The chord a t + b interpolates t^r at m and M. The maximum is taken for
    r outside [0, 1] and the minimum for r in (0, 1).
    """
    require(validate_bounds(m, M))
    slope = (M**r - m**r) / (M - m)
    intercept = (M * m**r - m * M**r) / (M - m)
    maximize = not (0.0 < r < 1.0)
    return _grid_extremum(lambda t: slope * t + intercept - alpha * t**r, m, M, maximize=maximize)


def _scalar_base(base: str, weights: np.ndarray, values: np.ndarray) -> float:
    if base == "arithmetic":
        return float(weights @ values)
    if base == "harmonic":
        return float(1.0 / (weights @ (1.0 / values)))
    raise ValidationError(f"Unknown base mean {base!r}")


def scalar_deformed_mean(base: str, weights: Sequence[float], sigma: MeanTwoSpec, values: Sequence[float]) -> float:
    """Positive root of x = base(x f(a_1/x), ..., x f(a_n/x)) for scalars.

    Both bases reduce the fixed-point equation to a monotone equation in x
    with a sign change on [min a, max a].
    """
    w = np.asarray(weights, dtype=float)
    a = np.asarray(values, dtype=float)
    keep = w > 0
    w, a = w[keep], a[keep]
    low, high = float(a.min()), float(a.max())
    if low == high:
        return low
    f = representing_function(sigma)

    if base == "arithmetic":

        def gap(x: float) -> float:
            return float(w @ f(a / x)) - 1.0

    elif base == "harmonic":

        def gap(x: float) -> float:
            return 1.0 - float(w @ (1.0 / f(a / x)))

    else:
        raise ValidationError(f"Unknown base mean {base!r}")
    return float(brentq(gap, low, high, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500))


def scalar_power_mean(weights: Sequence[float], alpha: float, values: Sequence[float]) -> float:
    """(sum_j w_j a_j^alpha)^{1/alpha}."""

    if alpha == 0:
        return scalar_karcher_mean(weights, values)
    w = np.asarray(weights, dtype=float)
    a = np.asarray(values, dtype=float)
    return float((w @ a**alpha) ** (1.0 / alpha))


def scalar_karcher_mean(weights: Sequence[float], values: Sequence[float]) -> float:
    """Weighted geometric mean exp(sum_j w_j log a_j)."""

    w = np.asarray(weights, dtype=float)
    a = np.asarray(values, dtype=float)
    return float(np.exp(w @ np.log(a)))


def diagonal_nmean(spec: NMeanSpec, diagonals: Sequence[Sequence[float]]) -> np.ndarray:
    """Apply the scalar n-mean coordinatewise to commuting diagonal inputs.

    Args:
        spec: Mean specification
        diagonals: One diagonal per operand

    Returns:
        Diagonal of the mean
    """
    table = np.asarray(diagonals, dtype=float)
    weights = spec.weights.as_array()
    out = np.empty(table.shape[1])
    for k in range(table.shape[1]):
        column = table[:, k]
        if spec.deform is None:
            out[k] = _scalar_base(spec.base, weights, column)
        else:
            out[k] = scalar_deformed_mean(spec.base, weights, spec.deform, column)
    return out


def diagonal_karcher(weights: Sequence[float], diagonals: Sequence[Sequence[float]]) -> np.ndarray:
    table = np.asarray(diagonals, dtype=float)
    return np.exp(np.asarray(weights, dtype=float) @ np.log(table))

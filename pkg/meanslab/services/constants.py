"""Scalar constants: generalized Kantorovich constant, Specht ratio, and the beta/gamma bounds.

Powers x**y are evaluated as exp(y * log x) throughout.
"""

from __future__ import annotations

import math

from meanslab.errors import DomainError, ValidationError
from meanslab.services.validators import require, validate_bounds

H_GUARD = 1e-8
P_GUARD = 1e-10
R_GUARD = 1e-12


def _power(x: float, y: float) -> float:
    return math.exp(y * math.log(x))


def _require_h(h: float) -> None:
    if not math.isfinite(h) or h < 1.0:
        raise ValidationError(f"h must be a finite real >= 1, got {h}")


def kantorovich(h: float, p: float) -> float:
    """Generalized Kantorovich constant K(h, p).

    K(h,p) = (h^p - h) / ((p-1)(h-1)) * ((p-1)/p * (h^p - 1)/(h^p - h))^p,
    continued by the value 1 at p = 0, p = 1 and h = 1.

    Args:
        h: Condition ratio M/m, at least 1
        p: Any real exponent

    Returns:
        K(h, p) > 0
    """
    _require_h(h)
    if abs(h - 1.0) < H_GUARD or abs(p) < P_GUARD or abs(p - 1.0) < P_GUARD:
        return 1.0
    hp = _power(h, p)
    first = (hp - h) / ((p - 1.0) * (h - 1.0))
    second = (p - 1.0) / p * (hp - 1.0) / (hp - h)
    return first * _power(second, p)


def kantorovich_ratio(m: float, M: float) -> float:
    """(M + m)^2 / (4 M m), which equals K(M/m, -1) and K(M/m, 2)."""

    require(validate_bounds(m, M, strict=False))
    return (M + m) ** 2 / (4.0 * M * m)


def specht(h: float) -> float:
    """Specht ratio S(h) = (h-1) h^{1/(h-1)} / (e log h), with S(1) = 1."""

    _require_h(h)
    if abs(h - 1.0) < H_GUARD:
        return 1.0
    log_h = math.log(h)
    return (h - 1.0) * math.exp(log_h / (h - 1.0)) / (math.e * log_h)


def beta(m: float, M: float, alpha: float) -> float:
    """Bound in M_sigma(Phi(A)) <= alpha Phi(M_sigma(A)) + beta(m, M, alpha) I.

    Equals the maximum of t - alpha M m / (M + m - t) over [m, M].
    """
    require(validate_bounds(m, M))
    if not alpha > 0:
        raise ValidationError(f"alpha must be positive, got {alpha}")
    pivot = math.sqrt(alpha * M * m)
    if m <= pivot <= M:
        return M + m - 2.0 * pivot
    if pivot > M:
        return (1.0 - alpha) * m
    return (1.0 - alpha) * M


def gamma_stationary_point(m: float, M: float, r: float, alpha: float) -> float:
    """t* = ((M^r - m^r) / (alpha r (M - m)))^{1/(r-1)}."""

    slope = (_power(M, r) - _power(m, r)) / (M - m)
    return _power(slope / (alpha * r), 1.0 / (r - 1.0))


def gamma(m: float, M: float, r: float, alpha: float) -> float:
    """Jensen-gap bound gamma(m, M, r, alpha) for X with mI <= X <= MI.

    Phi(X^r) - alpha Phi(X)^r <= gamma I for r outside [0, 1], and >= for
    r in (0, 1). Branch ties resolve to the interior formula.
    """
    require(validate_bounds(m, M))
    if not alpha > 0:
        raise ValidationError(f"alpha must be positive, got {alpha}")
    if abs(r) < R_GUARD or abs(r - 1.0) < R_GUARD:
        raise DomainError(f"gamma is undefined at r = {r}", r)
    t_star = gamma_stationary_point(m, M, r, alpha)
    mr = _power(m, r)
    Mr = _power(M, r)
    if m <= t_star <= M:
        slope = (Mr - mr) / (M - m)
        intercept = (M * mr - m * Mr) / (M - m)
        return alpha * (r - 1.0) * _power(slope / (alpha * r), r / (r - 1.0)) + intercept
    if t_star > M:
        return (1.0 - alpha) * Mr
    return (1.0 - alpha) * mr


def kantorovich_logconvexity_check(h: float, r: float, slack: float = 1e-12) -> bool:
    """K(h, -r) <= K(h, -1)^r for r in (0, 1), and >= otherwise."""

    left = kantorovich(h, -r)
    right = kantorovich(h, -1.0) ** r
    if 0.0 < r < 1.0:
        return left <= right * (1.0 + slack)
    return left >= right * (1.0 - slack)


def kantorovich_improvement(h: float, r: float) -> tuple[float, float]:
    """Return (K(h, -r), K(h, -1)^r); the first is strictly smaller for r in (0, 1) and h > 1."""

    return kantorovich(h, -r), kantorovich(h, -1.0) ** r


def norm_chain_constant(h: float, q: float, p: float) -> float:
    """K(h^p, -q/p)^{1/q}, the constant of the power-norm chain for 0 < q < p."""

    if not 0 < q < p:
        raise ValidationError(f"norm chain needs 0 < q < p, got q={q}, p={p}")
    return kantorovich(h**p, -q / p) ** (1.0 / q)


def norm_chain_improvement(m: float, M: float, q: float, p: float) -> tuple[float, float]:
    """Return (K(h^p, -q/p)^{1/q}, ((M^p + m^p)^2 / (4 M^p m^p))^{1/p}); the first is smaller."""

    require(validate_bounds(m, M))
    improved = norm_chain_constant(M / m, q, p)
    classical = kantorovich_ratio(m**p, M**p) ** (1.0 / p)
    return improved, classical


def order_interpolation_constant(h: float, q: float, p: float) -> float:
    """Constant c with c^{-1} M(A^p)^{1/p} <= M(A^q)^{1/q} <= c M(A^p)^{1/p}.

    For 1 <= q <= p it is K(h^p, -q/p)^{1/q}; for 0 < q < 1, q < p it also
    carries the factor K(h^q, 1/q).
    """
    if not (0 < q <= p):
        raise ValidationError(f"order interpolation needs 0 < q <= p, got q={q}, p={p}")
    base = kantorovich(h**p, -q / p) ** (1.0 / q)
    if q >= 1.0:
        return base
    return kantorovich(h**q, 1.0 / q) * base


def specht_limit_gap(h: float, s: float, r: float) -> float:
    """|K(h^r, s/r) - S(h^s)|, which vanishes as r -> 0."""

    return abs(kantorovich(h**r, s / r) - specht(h**s))

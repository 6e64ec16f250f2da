"""n-variable means: arithmetic, harmonic, deformed, power, Karcher and Log-Euclidean."""

from __future__ import annotations

import logging
import math
from dataclasses import replace
from typing import List, Optional, Sequence, Tuple

import numpy as np

from meanslab.config import SolverConfig
from meanslab.errors import SolverError, ValidationError
from meanslab.models import MeanTwoSpec, NMeanSpec, SolveTrace, SpdMatrix, Weights
from meanslab.services import spd
from meanslab.services.means2 import adjoint2, geometric, mean2_many
from meanslab.services.validators import require, validate_interval, validate_lengths, validate_solver_config, validate_weights

logger = logging.getLogger("meanslab.solver")

BASES = ("arithmetic", "harmonic")
ROUNDOFF_FACTOR = 32.0
KARCHER_START_ALPHA = 0.125
KARCHER_START_TOL = 1e-6
# cfg.max_iter is sized for damping * f'(1) >= this; the fixed-point map contracts at about 1 - damping * f'(1)
FULL_RATE_WEIGHT = 0.125


def weights_from(values: Sequence[float]) -> Weights:
    """Validated probability vector."""

    require(validate_weights(values))
    return Weights(w=tuple(float(value) for value in values))


def uniform_weights(n: int) -> Weights:
    if n < 1:
        raise ValidationError(f"n must be at least 1, got {n}")
    return Weights(w=tuple([1.0 / n] * n))


def nmean_spec(base: str, weights: Weights, deform: Optional[MeanTwoSpec] = None) -> NMeanSpec:
    if base not in BASES:
        raise ValidationError(f"base must be one of {', '.join(BASES)}, got {base!r}")
    return NMeanSpec(base=base, weights=weights, deform=deform)


def _prepare(weights: Weights, matrices: Sequence[spd.MatrixLike]) -> Tuple[np.ndarray, List[SpdMatrix]]:
    require(validate_lengths(len(weights), len(matrices)))
    operands = [spd.as_spd(A) for A in matrices]
    spd.require_same_dimension(operands)
    return weights.as_array(), operands


def _support(w: np.ndarray, operands: List[SpdMatrix]) -> Tuple[np.ndarray, List[SpdMatrix]]:
    keep = [index for index, value in enumerate(w) if value > 0]
    return w[keep], [operands[index] for index in keep]


def _arithmetic(w: np.ndarray, operands: Sequence[SpdMatrix]) -> SpdMatrix:
    if len(operands) == 1:
        return operands[0]
    total = np.zeros_like(operands[0].entries)
    for weight, A in zip(w, operands):
        total += weight * A.entries
    return spd.spd_from_entries(spd.symmetrize(total))


def _harmonic(w: np.ndarray, operands: Sequence[SpdMatrix]) -> SpdMatrix:
    if len(operands) == 1:
        return operands[0]
    total = np.zeros_like(operands[0].entries)
    for weight, A in zip(w, operands):
        total += weight * spd.mat_inv(A).entries
    return spd.mat_inv(spd.symmetrize(total))


def _base(base: str, w: np.ndarray, operands: Sequence[SpdMatrix]) -> SpdMatrix:
    if base == "arithmetic":
        return _arithmetic(w, operands)
    if base == "harmonic":
        return _harmonic(w, operands)
    raise ValidationError(f"base must be one of {', '.join(BASES)}, got {base!r}")


def arithmetic_mean(weights: Weights, matrices: Sequence[spd.MatrixLike]) -> SpdMatrix:
    """A_w = sum_j w_j A_j."""

    w, operands = _support(*_prepare(weights, matrices))
    return _arithmetic(w, operands)


def harmonic_mean(weights: Weights, matrices: Sequence[spd.MatrixLike]) -> SpdMatrix:
    """H_w = (sum_j w_j A_j^{-1})^{-1}."""

    w, operands = _support(*_prepare(weights, matrices))
    return _harmonic(w, operands)


def _effective_tol(cfg: SolverConfig, operands: Sequence[SpdMatrix], X: SpdMatrix) -> float:
    """Requested tolerance, floored at the roundoff level of the worst-conditioned operand."""

    kappa = max([A.bounds.h for A in operands] + [X.bounds.h])
    return max(cfg.tol, ROUNDOFF_FACTOR * spd.EPS * kappa)


def iteration_cap(sigma: MeanTwoSpec, cfg: SolverConfig) -> int:
    """cfg.max_iter, scaled up for weak deformations whose fixed-point map contracts slowly."""

    rate = cfg.damping * sigma.alpha0
    if rate >= FULL_RATE_WEIGHT:
        return cfg.max_iter
    return math.ceil(cfg.max_iter * FULL_RATE_WEIGHT / rate)


def _check_deform(sigma: MeanTwoSpec) -> None:
    if sigma.kind == "left_trivial":
        raise ValidationError("The left trivial mean cannot deform an n-variable mean")
    if sigma.kind == "custom" and not sigma.operator_monotone:
        raise ValidationError("Custom means must assert operator monotonicity before deformation")
    if not 0.0 < sigma.alpha0 <= 1.0:
        raise ValidationError(f"sigma needs f'(1) in (0, 1], got {sigma.alpha0}")


def deformed_mean(spec: NMeanSpec, matrices: Sequence[spd.MatrixLike], cfg: SolverConfig | None = None) -> Tuple[SpdMatrix, SolveTrace]:
    """Solve X = M(X sigma A_1, ..., X sigma A_n) by damped fixed-point iteration.

    Starts at the weighted arithmetic mean. Convergence is judged by the
    relative fixed-point defect |X - F(X)| / |X|; the returned X is the
    iterate whose defect met the tolerance.

    Raises:
        ValidationError: sigma is the left trivial mean or inputs are inconsistent
        SolverError: no convergence within iteration_cap(sigma, cfg) evaluations of F
    """
    cfg = cfg or SolverConfig()
    require(validate_solver_config(cfg))
    if spec.deform is None:
        raise ValidationError("deformed_mean needs a deforming mean sigma")
    sigma = spec.deform
    _check_deform(sigma)
    w, operands = _support(*_prepare(spec.weights, matrices))
    if len(operands) == 1:
        return operands[0], SolveTrace(iterations=0, residual=0.0, converged=True, tol=cfg.tol)

    X = _arithmetic(w, operands)
    max_iter = iteration_cap(sigma, cfg)
    tol = cfg.tol
    residual = math.inf
    for iteration in range(1, max_iter + 1):
        image = _base(spec.base, w, mean2_many(sigma, X, operands))
        residual = spd.op_norm(X.entries - image.entries) / spd.op_norm(X)
        tol = _effective_tol(cfg, operands, X)
        if residual <= tol:
            logger.debug(f"{spec.name}: converged in {iteration} iterations (residual {residual:.3e})")
            return X, SolveTrace(iterations=iteration, residual=residual, converged=True, tol=tol)
        if cfg.damping == 1.0:
            X = image
        else:
            X = spd.spd_from_entries((1.0 - cfg.damping) * X.entries + cfg.damping * image.entries)

    trace = SolveTrace(iterations=max_iter, residual=residual, converged=False, tol=tol)
    logger.warning(f"{spec.name}: no convergence after {max_iter} iterations (residual {residual:.3e})")
    raise SolverError(
        f"Deformed mean {spec.name} did not converge in {max_iter} iterations (residual {residual:.3e} > {tol:.3e})",
        trace,
    )


def nmean(spec: NMeanSpec, matrices: Sequence[spd.MatrixLike], cfg: SolverConfig | None = None) -> Tuple[SpdMatrix, Optional[SolveTrace]]:
    """Evaluate any NMeanSpec; the trace is None for the undeformed bases."""

    if spec.deform is None:
        w, operands = _support(*_prepare(spec.weights, matrices))
        return _base(spec.base, w, operands), None
    return deformed_mean(spec, matrices, cfg)


def power_mean_traced(
    weights: Weights, alpha: float, matrices: Sequence[spd.MatrixLike], cfg: SolverConfig | None = None
) -> Tuple[SpdMatrix, Optional[SolveTrace]]:
    """Power mean P_{w, alpha} for alpha in [-1, 1] without 0, with the fixed-point trace.

    alpha > 0 solves X = A_w(X #_alpha A_1, ..., X #_alpha A_n); alpha < 0
    uses P_{w, alpha} = (P_{w, -alpha} of the inverses)^{-1}. The trace is None
    for alpha = +-1 and a single-operand support.
    """
    require(validate_interval(alpha, "alpha", -1.0, 1.0))
    if alpha == 0:
        raise ValidationError("alpha = 0 is the Karcher mean; use karcher_mean")
    w, operands = _support(*_prepare(weights, matrices))
    if len(operands) == 1:
        return operands[0], None
    if alpha == 1:
        return arithmetic_mean(weights, matrices), None
    if alpha == -1:
        return harmonic_mean(weights, matrices), None
    if alpha < 0:
        inverses = [spd.mat_inv(A) for A in matrices]
        result, trace = power_mean_traced(weights, -alpha, inverses, cfg)
        return spd.mat_inv(result), trace
    return deformed_mean(NMeanSpec(base="arithmetic", weights=weights, deform=geometric(alpha)), matrices, cfg)


def power_mean(weights: Weights, alpha: float, matrices: Sequence[spd.MatrixLike], cfg: SolverConfig | None = None) -> SpdMatrix:
    """Power mean P_{w, alpha}; see power_mean_traced."""

    result, _ = power_mean_traced(weights, alpha, matrices, cfg)
    return result


def power_mean_direct(weights: Weights, alpha: float, matrices: Sequence[spd.MatrixLike], cfg: SolverConfig | None = None) -> SpdMatrix:
    """P_{w, alpha} for alpha in (-1, 0) as the harmonic base deformed by #_{-alpha}."""

    require(validate_interval(alpha, "alpha", -1.0, 0.0, low_open=True, high_open=True))
    result, _ = deformed_mean(NMeanSpec(base="harmonic", weights=weights, deform=geometric(-alpha)), matrices, cfg)
    return result


def _karcher_terms(X: SpdMatrix, w: np.ndarray, operands: Sequence[SpdMatrix]) -> Tuple[np.ndarray, np.ndarray, np.ndarray, float]:
    root, inv_root = spd.roots(X)
    gradient = np.zeros_like(X.entries)
    weighted_terms = 0.0
    for weight, A in zip(w, operands):
        inner = spd.spd_from_entries(spd.symmetrize(inv_root @ A.entries @ inv_root))
        gradient += weight * spd.mat_log(inner)
        c = inner.bounds.h
        term = 2.0 if c - 1.0 < 1e-12 else (c + 1.0) / (c - 1.0) * math.log(c)
        weighted_terms += weight * term
    return root, inv_root, spd.symmetrize(gradient), 2.0 / weighted_terms


def karcher_mean(weights: Weights, matrices: Sequence[spd.MatrixLike], cfg: SolverConfig | None = None) -> Tuple[SpdMatrix, SolveTrace]:
    """Solve the Karcher equation sum_j w_j log(X^{-1/2} A_j X^{-1/2}) = 0.

    Starts from P_{w, 1/8} and iterates
    X <- X^{1/2} exp(t * sum_j w_j log(X^{-1/2} A_j X^{-1/2})) X^{1/2}
    with t = damping, scaled by the Richardson step 2 / sum_j w_j (c_j+1)/(c_j-1) log c_j
    when cfg.karcher_step is "adaptive" (c_j is the condition number of the j-th term).
    """
    cfg = cfg or SolverConfig()
    require(validate_solver_config(cfg))
    w, operands = _support(*_prepare(weights, matrices))
    if len(operands) == 1:
        return operands[0], SolveTrace(iterations=0, residual=0.0, converged=True, tol=cfg.tol)

    start_cfg = replace(cfg, tol=max(cfg.tol, KARCHER_START_TOL))
    X = power_mean(Weights(w=tuple(float(v) for v in w)), KARCHER_START_ALPHA, operands, start_cfg)
    scale = float(np.mean([spd.op_norm(spd.mat_log(A)) for A in operands])) + 1.0
    tol = cfg.tol
    residual = math.inf
    for iteration in range(1, cfg.max_iter + 1):
        root, _, gradient, richardson = _karcher_terms(X, w, operands)
        residual = spd.op_norm(gradient)
        tol = _effective_tol(cfg, operands, X)
        if residual <= tol * scale:
            logger.debug(f"karcher: converged in {iteration} iterations (residual {residual:.3e})")
            return X, SolveTrace(iterations=iteration, residual=residual, converged=True, tol=tol * scale)
        step = cfg.damping * (richardson if cfg.karcher_step == "adaptive" else 1.0)
        update = spd.mat_exp(step * gradient)
        X = spd.spd_from_entries(spd.symmetrize(root @ update.entries @ root))

    trace = SolveTrace(iterations=cfg.max_iter, residual=residual, converged=False, tol=tol * scale)
    logger.warning(f"karcher: no convergence after {cfg.max_iter} iterations (residual {residual:.3e})")
    raise SolverError(f"Karcher mean did not converge in {cfg.max_iter} iterations (residual {residual:.3e})", trace)


def karcher_residual(weights: Weights, matrices: Sequence[spd.MatrixLike], X: spd.MatrixLike) -> float:
    """|sum_j w_j log(X^{-1/2} A_j X^{-1/2})| in operator norm."""

    w, operands = _support(*_prepare(weights, matrices))
    _, _, gradient, _ = _karcher_terms(spd.as_spd(X), w, operands)
    return spd.op_norm(gradient)


def log_euclidean(weights: Weights, matrices: Sequence[spd.MatrixLike]) -> SpdMatrix:
    """exp(sum_j w_j log A_j)."""

    w, operands = _support(*_prepare(weights, matrices))
    if len(operands) == 1:
        return operands[0]
    total = np.zeros_like(operands[0].entries)
    for weight, A in zip(w, operands):
        total += weight * spd.mat_log(A)
    return spd.mat_exp(spd.symmetrize(total))


def adjoint_spec(spec: NMeanSpec) -> NMeanSpec:
    """(M_sigma)* = (M*)_{sigma*}: swap the base and take the adjoint of sigma."""

    base = "harmonic" if spec.base == "arithmetic" else "arithmetic"
    deform = adjoint2(spec.deform) if spec.deform is not None else None
    return NMeanSpec(base=base, weights=spec.weights, deform=deform)


def adjoint_nmean(spec: NMeanSpec, matrices: Sequence[spd.MatrixLike], cfg: SolverConfig | None = None) -> SpdMatrix:
    """M*(A_1, ..., A_n) = M(A_1^{-1}, ..., A_n^{-1})^{-1}."""

    w, operands = _support(*_prepare(spec.weights, matrices))
    if len(operands) == 1:
        return operands[0]
    inverses = [spd.mat_inv(A) for A in matrices]
    result, _ = nmean(spec, inverses, cfg)
    return spd.mat_inv(result)


def lie_trotter_errors(
    spec: NMeanSpec, matrices: Sequence[spd.MatrixLike], ps: Sequence[float], cfg: SolverConfig | None = None
) -> List[float]:
    """e(p) = |M(A_1^p, ..., A_n^p)^{1/p} - exp(sum_j w_j log A_j)| for each p > 0."""

    target = log_euclidean(spec.weights, matrices)
    errors: List[float] = []
    for p in ps:
        if not p > 0:
            raise ValidationError(f"Lie-Trotter exponents must be positive, got {p}")
        powered = [spd.mat_pow(A, p) for A in matrices]
        result, _ = nmean(spec, powered, cfg)
        errors.append(spd.op_norm(spd.mat_pow(result, 1.0 / p).entries - target.entries))
    return errors

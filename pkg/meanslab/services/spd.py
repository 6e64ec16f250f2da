"""Functional calculus on real symmetric positive definite matrices."""

from __future__ import annotations

import logging
from typing import Callable, Sequence, Tuple, Union

import numpy as np
from scipy import linalg

from meanslab.errors import DomainError, NumericError, ValidationError
from meanslab.models import SpdMatrix, SpectralBounds
from meanslab.services.validators import require, validate_same_dimension, validate_square, validate_symmetric

logger = logging.getLogger(__name__)

MatrixLike = Union[SpdMatrix, np.ndarray]
ScalarFunction = Callable[[np.ndarray], np.ndarray]

EPS = float(np.finfo(float).eps)


def symmetrize(X: np.ndarray) -> np.ndarray:
    return (X + X.T) / 2.0


def as_array(A: MatrixLike) -> np.ndarray:
    """Return the entries of A as a float array."""

    if isinstance(A, SpdMatrix):
        return A.entries
    return np.asarray(A, dtype=float)


def _eigh(entries: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    try:
        values, vectors = linalg.eigh(entries, check_finite=False)
    except linalg.LinAlgError as exc:
        raise NumericError(f"Symmetric eigensolver failed: {exc}") from exc
    return values, vectors


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.ascontiguousarray(array, dtype=float)
    array.setflags(write=False)
    return array


def spd_from_entries(entries: Sequence[Sequence[float]] | np.ndarray) -> SpdMatrix:
    """Validate entries and build an SpdMatrix with its eigendecomposition.

    Raises:
        ValidationError: non-square or asymmetric input
        DomainError: a non-positive eigenvalue (named in the message)
    """
    array = np.array(entries, dtype=float, copy=True)
    require(validate_square(array))
    require(validate_symmetric(array))
    array = symmetrize(array)
    values, vectors = _eigh(array)
    if values[0] <= 0:
        raise DomainError(f"Matrix is not positive definite: eigenvalue {values[0]!r}", float(values[0]))
    return SpdMatrix(entries=_frozen(array), eigenvalues=_frozen(values), basis=_frozen(vectors))


def as_spd(A: MatrixLike) -> SpdMatrix:
    if isinstance(A, SpdMatrix):
        return A
    return spd_from_entries(A)


def identity(dim: int) -> SpdMatrix:
    return spd_from_entries(np.eye(dim))


def eig_sym(A: MatrixLike) -> Tuple[np.ndarray, np.ndarray]:
    """Return ascending eigenvalues and orthonormal eigenvectors of a symmetric matrix."""

    if isinstance(A, SpdMatrix):
        return A.eigenvalues, A.basis
    array = as_array(A)
    require(validate_square(array))
    require(validate_symmetric(array))
    return _eigh(symmetrize(array))


def _apply(values: np.ndarray, f: ScalarFunction) -> np.ndarray:
    with np.errstate(all="ignore"):
        mapped = np.asarray(f(values), dtype=float)
    if mapped.shape != values.shape:
        mapped = np.broadcast_to(mapped, values.shape).astype(float)
    bad = ~np.isfinite(mapped)
    if np.any(bad):
        eigenvalue = float(values[np.argmax(bad)])
        raise DomainError(f"Function is undefined at eigenvalue {eigenvalue!r}", eigenvalue)
    return mapped


def _compose(values: np.ndarray, basis: np.ndarray) -> np.ndarray:
    return symmetrize((basis * values) @ basis.T)


def matrix_fn(A: MatrixLike, f: ScalarFunction) -> np.ndarray:
    """Apply a scalar function through the spectral decomposition: Q diag(f(l)) Q^T."""

    values, basis = eig_sym(A)
    return _compose(_apply(values, f), basis)


def _spd_fn(A: MatrixLike, f: ScalarFunction) -> SpdMatrix:
    values, basis = eig_sym(A)
    mapped = _apply(values, f)
    if np.min(mapped) <= 0:
        eigenvalue = float(values[np.argmin(mapped)])
        raise DomainError(f"Result is not positive definite at eigenvalue {eigenvalue!r}", eigenvalue)
    return spd_from_entries(_compose(mapped, basis))


def mat_pow(A: MatrixLike, r: float) -> SpdMatrix:
    if r == 1:
        return as_spd(A)
    if r == 0:
        return identity(as_array(A).shape[0])
    return _spd_fn(A, lambda t: np.exp(r * np.log(t)))


def mat_log(A: MatrixLike) -> np.ndarray:
    return matrix_fn(A, np.log)


def mat_exp(H: MatrixLike) -> SpdMatrix:
    return _spd_fn(H, np.exp)


def mat_inv(A: MatrixLike) -> SpdMatrix:
    return _spd_fn(A, np.reciprocal)


def roots(A: MatrixLike) -> Tuple[np.ndarray, np.ndarray]:
    """Return (A^{1/2}, A^{-1/2}) from a single eigendecomposition."""

    values, basis = eig_sym(A)
    if values[0] <= 0:
        raise DomainError(f"Square root needs a positive spectrum, got eigenvalue {values[0]!r}", float(values[0]))
    root = np.sqrt(values)
    return _compose(root, basis), _compose(1.0 / root, basis)


def congruence(S: np.ndarray, A: MatrixLike) -> SpdMatrix:
    """Return S^T A S for invertible S."""

    S = np.asarray(S, dtype=float)
    array = as_array(A)
    if S.ndim != 2 or S.shape[0] != S.shape[1] or S.shape[0] != array.shape[0]:
        raise ValidationError(f"Congruence needs a square {array.shape[0]}x{array.shape[0]} matrix, got {S.shape}")
    condition = float(np.linalg.cond(S))
    if not np.isfinite(condition) or condition > 1.0 / EPS:
        raise ValidationError(f"Congruence matrix is singular (condition number {condition:.3e})")
    logger.debug(f"congruence: condition number {condition:.3e}")
    return spd_from_entries(symmetrize(S.T @ array @ S))


def op_norm(A: MatrixLike) -> float:
    """Largest absolute eigenvalue."""

    if isinstance(A, SpdMatrix):
        return float(A.eigenvalues[-1])
    array = as_array(A)
    values = linalg.eigvalsh(symmetrize(array), check_finite=False)
    return float(max(abs(values[0]), abs(values[-1])))


def loewner_margin(A: MatrixLike, B: MatrixLike) -> Tuple[float, float]:
    """Return (lambda_min(B - A), max(1, |A|, |B|)) for the comparison A <= B."""

    left = as_array(A)
    right = as_array(B)
    if left.shape != right.shape:
        raise ValidationError(f"Dimension mismatch in Loewner comparison: {left.shape} vs {right.shape}")
    try:
        values = linalg.eigvalsh(symmetrize(right - left), check_finite=False)
    except linalg.LinAlgError as exc:
        raise NumericError(f"Symmetric eigensolver failed: {exc}") from exc
    scale = max(1.0, op_norm(A), op_norm(B))
    return float(values[0]), scale


def loewner_leq(A: MatrixLike, B: MatrixLike, tol: float = 1e-9) -> Tuple[bool, float]:
    """Test A <= B in Loewner order with relative tolerance.

    Returns:
        Tuple of (holds, margin) where margin is the minimum eigenvalue of B - A
    """
    margin, scale = loewner_margin(A, B)
    return margin >= -tol * scale, margin


def spectral_bounds(A: MatrixLike) -> SpectralBounds:
    values, _ = eig_sym(A)
    if values[0] <= 0:
        raise DomainError(f"Spectral bounds need a positive spectrum, got eigenvalue {values[0]!r}", float(values[0]))
    return SpectralBounds(m=float(values[0]), M=float(values[-1]))


def joint_bounds(matrices: Sequence[MatrixLike]) -> SpectralBounds:
    """Smallest interval [m, M] containing every spectrum."""

    bounds = [spectral_bounds(A) for A in matrices]
    return SpectralBounds(m=min(b.m for b in bounds), M=max(b.M for b in bounds))


def condition_number(A: MatrixLike) -> float:
    bounds = spectral_bounds(A)
    return bounds.h


def require_same_dimension(matrices: Sequence[MatrixLike]) -> int:
    require(validate_same_dimension(as_array(A).shape[0] for A in matrices))
    return as_array(matrices[0]).shape[0]


def random_orthogonal(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed orthogonal matrix from QR of a Gaussian matrix."""

    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    return q * np.sign(np.where(np.diag(r) == 0, 1.0, np.diag(r)))


def _spectrum(dim: int, bounds: SpectralBounds, rng: np.random.Generator) -> np.ndarray:
    if dim == 1:
        return np.array([rng.uniform(bounds.m, bounds.M)])
    interior = rng.uniform(bounds.m, bounds.M, size=dim - 2)
    return np.sort(np.concatenate(([bounds.m, bounds.M], interior)))


def random_spd(dim: int, bounds: SpectralBounds, seed: int | np.random.Generator) -> SpdMatrix:
    """Random SPD matrix with spectrum in [m, M]; m and M are attained when dim >= 2."""

    if dim < 1:
        raise ValidationError(f"dim must be at least 1, got {dim}")
    rng = np.random.default_rng(seed)
    values = _spectrum(dim, bounds, rng)
    basis = random_orthogonal(dim, rng)
    return spd_from_entries(_compose(values, basis))


def random_diagonal_spd(dim: int, bounds: SpectralBounds, seed: int | np.random.Generator) -> SpdMatrix:
    """Diagonal SPD matrix with the same spectrum law as random_spd."""

    if dim < 1:
        raise ValidationError(f"dim must be at least 1, got {dim}")
    rng = np.random.default_rng(seed)
    values = rng.permutation(_spectrum(dim, bounds, rng))
    return spd_from_entries(np.diag(values))

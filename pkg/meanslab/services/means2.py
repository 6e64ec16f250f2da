"""Two-variable Kubo-Ando operator means defined by representing functions."""

from __future__ import annotations

from typing import Any, Callable, Dict, Iterable, List, Sequence

import numpy as np

from meanslab.errors import ValidationError
from meanslab.models import MeanTwoSpec, SpdMatrix
from meanslab.services import spd
from meanslab.services.validators import require, validate_interval

BUILTIN_KINDS = ("geometric", "arithmetic", "harmonic", "left_trivial")
NORMALIZATION_TOL = 1e-12
DERIVATIVE_STEP = 1e-6

DEFAULT_PMI_X_GRID = tuple(np.geomspace(1e-3, 1e3, 61))
DEFAULT_PMI_R_GRID = (1.0, 1.25, 1.5, 2.0, 3.0, 5.0, 10.0)


def _weighted(kind: str, alpha: float) -> MeanTwoSpec:
    require(validate_interval(alpha, "alpha", 0.0, 1.0))
    return MeanTwoSpec(kind=kind, alpha=float(alpha), alpha0=float(alpha))


def geometric(alpha: float = 0.5) -> MeanTwoSpec:
    """A #_alpha B = A^{1/2} (A^{-1/2} B A^{-1/2})^alpha A^{1/2}."""

    return _weighted("geometric", alpha)


def arithmetic(alpha: float = 0.5) -> MeanTwoSpec:
    """A nabla_alpha B = (1 - alpha) A + alpha B."""

    return _weighted("arithmetic", alpha)


def harmonic(alpha: float = 0.5) -> MeanTwoSpec:
    """A !_alpha B = ((1 - alpha) A^{-1} + alpha B^{-1})^{-1}."""

    return _weighted("harmonic", alpha)


def left_trivial() -> MeanTwoSpec:
    """A l B = A."""

    return MeanTwoSpec(kind="left_trivial", alpha0=0.0)


def custom(
    f: Callable[[np.ndarray], np.ndarray],
    *,
    operator_monotone: bool = False,
    alpha0: float | None = None,
    label: str = "custom",
) -> MeanTwoSpec:
    """Wrap a caller-supplied representing function.

    Operator monotonicity of ``f`` is not machine-checked; pass
    ``operator_monotone=True`` to assert it. ``alpha0`` defaults to a central
    difference estimate of f'(1).
    """
    at_one = float(np.asarray(f(np.array([1.0])), dtype=float).ravel()[0])
    if abs(at_one - 1.0) > NORMALIZATION_TOL:
        raise ValidationError(f"Representing function must satisfy f(1) = 1, got {at_one!r}")
    if alpha0 is None:
        ahead, behind = np.asarray(f(np.array([1.0 + DERIVATIVE_STEP, 1.0 - DERIVATIVE_STEP])), dtype=float)
        alpha0 = float((ahead - behind) / (2.0 * DERIVATIVE_STEP))
    return MeanTwoSpec(kind="custom", alpha0=alpha0, func=f, operator_monotone=operator_monotone, label=label)


def representing_function(spec: MeanTwoSpec) -> Callable[[np.ndarray], np.ndarray]:
    """Vectorized representing function f_sigma on (0, inf)."""

    alpha = spec.alpha if spec.alpha is not None else 0.0
    if spec.kind == "geometric":
        return lambda x: np.exp(alpha * np.log(x))
    if spec.kind == "arithmetic":
        return lambda x: (1.0 - alpha) + alpha * np.asarray(x, dtype=float)
    if spec.kind == "harmonic":
        return lambda x: np.asarray(x, dtype=float) / ((1.0 - alpha) * np.asarray(x, dtype=float) + alpha)
    if spec.kind == "left_trivial":
        return lambda x: np.ones_like(np.asarray(x, dtype=float))
    if spec.kind == "custom" and spec.func is not None:
        return spec.func
    raise ValidationError(f"Unknown mean kind {spec.kind!r}")


def _mean_with_roots(
    spec: MeanTwoSpec, f: Callable[[np.ndarray], np.ndarray], A: SpdMatrix, root: np.ndarray, inv_root: np.ndarray, B: SpdMatrix
) -> SpdMatrix:
    if spec.kind == "arithmetic":
        assert spec.alpha is not None
        return spd.spd_from_entries((1.0 - spec.alpha) * A.entries + spec.alpha * B.entries)
    if spec.kind == "harmonic":
        assert spec.alpha is not None
        mixed = (1.0 - spec.alpha) * spd.mat_inv(A).entries + spec.alpha * spd.mat_inv(B).entries
        return spd.mat_inv(spd.symmetrize(mixed))
    if spec.kind == "left_trivial":
        return A
    inner = spd.symmetrize(inv_root @ B.entries @ inv_root)
    return spd.spd_from_entries(spd.symmetrize(root @ spd.matrix_fn(inner, f) @ root))


def mean2(spec: MeanTwoSpec, A: SpdMatrix, B: SpdMatrix) -> SpdMatrix:
    """A sigma B = A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}."""

    spd.require_same_dimension([A, B])
    root, inv_root = spd.roots(A)
    return _mean_with_roots(spec, representing_function(spec), A, root, inv_root, B)


def mean2_many(spec: MeanTwoSpec, X: SpdMatrix, Bs: Sequence[SpdMatrix]) -> List[SpdMatrix]:
    """[X sigma B for B in Bs], sharing one factorization of X."""

    root, inv_root = spd.roots(X)
    f = representing_function(spec)
    return [_mean_with_roots(spec, f, X, root, inv_root, B) for B in Bs]


def adjoint2(spec: MeanTwoSpec) -> MeanTwoSpec:
    """sigma* with A sigma* B = (A^{-1} sigma B^{-1})^{-1}, i.e. f*(x) = 1 / f(1/x)."""

    if spec.kind == "arithmetic":
        return harmonic(spec.alpha if spec.alpha is not None else 0.5)
    if spec.kind == "harmonic":
        return arithmetic(spec.alpha if spec.alpha is not None else 0.5)
    if spec.kind in ("geometric", "left_trivial"):
        return spec
    f = representing_function(spec)

    def dual(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return 1.0 / np.asarray(f(1.0 / x), dtype=float)

    return MeanTwoSpec(
        kind="custom",
        alpha0=spec.alpha0,
        func=dual,
        operator_monotone=spec.operator_monotone,
        label=f"{spec.name}*",
    )


def is_pmi(
    spec: MeanTwoSpec,
    x_grid: Iterable[float] = DEFAULT_PMI_X_GRID,
    r_grid: Iterable[float] = DEFAULT_PMI_R_GRID,
) -> bool:
    """Grid test of power monotone increase: f(x^r) >= f(x)^r for x > 0, r >= 1."""

    f = representing_function(spec)
    x = np.asarray(list(x_grid), dtype=float)
    for r in r_grid:
        if r < 1:
            raise ValidationError(f"p.m.i. grid needs r >= 1, got {r}")
        with np.errstate(over="ignore"):
            left = np.asarray(f(x**r), dtype=float)
            right = np.asarray(f(x), dtype=float) ** r
        slack = 1e-12 * np.maximum(1.0, np.abs(right))
        if np.any(left - right < -slack):
            return False
    return True


def spec_to_dict(spec: MeanTwoSpec) -> Dict[str, Any]:
    """JSON form {"kind": ..., "alpha": ...}; custom means are not serializable."""

    if spec.kind == "custom":
        raise ValidationError("Custom means cannot be serialized")
    payload: Dict[str, Any] = {"kind": spec.kind}
    if spec.alpha is not None:
        payload["alpha"] = spec.alpha
    return payload


def spec_from_dict(data: Dict[str, Any]) -> MeanTwoSpec:
    kind = data.get("kind")
    if kind == "left_trivial":
        return left_trivial()
    builders = {"geometric": geometric, "arithmetic": arithmetic, "harmonic": harmonic}
    if kind not in builders:
        raise ValidationError(f"sigma.kind must be one of {', '.join(BUILTIN_KINDS)}, got {kind!r}")
    return builders[kind](float(data.get("alpha", 0.5)))

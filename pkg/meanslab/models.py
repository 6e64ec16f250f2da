"""Domain models for meanslab."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np


@dataclass(frozen=True, slots=True, eq=False)
class SpdMatrix:
    """Real symmetric positive definite matrix with its eigendecomposition.

    Arrays are read-only; build instances through ``services.spd`` so the
    symmetry and positivity invariants are checked.
    """

    entries: np.ndarray
    eigenvalues: np.ndarray  # ascending
    basis: np.ndarray  # orthonormal eigenvector columns

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    @property
    def bounds(self) -> "SpectralBounds":
        """Return the tight spectral bounds of this matrix."""

        return SpectralBounds(m=float(self.eigenvalues[0]), M=float(self.eigenvalues[-1]))


@dataclass(frozen=True, slots=True)
class SpectralBounds:
    """Scalars with mI <= A <= MI."""

    m: float
    M: float

    @property
    def h(self) -> float:
        return self.M / self.m

    def as_tuple(self) -> Tuple[float, float]:
        return (self.m, self.M)


@dataclass(frozen=True, slots=True)
class Weights:
    """Probability vector."""

    w: Tuple[float, ...]

    def __len__(self) -> int:
        return len(self.w)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.w, dtype=float)

    def support(self) -> List[int]:
        """Indices carrying positive weight."""

        return [index for index, value in enumerate(self.w) if value > 0.0]


@dataclass(frozen=True, slots=True)
class MeanTwoSpec:
    """Two-variable operator mean given by its representing function.

    ``kind`` is one of geometric, arithmetic, harmonic, left_trivial, custom.
    Built-in kinds carry their weight in ``alpha``; custom means carry
    ``func`` and a caller assertion of operator monotonicity.
    """

    kind: str
    alpha: Optional[float] = None
    alpha0: float = 1.0
    func: Optional[Callable[[np.ndarray], np.ndarray]] = field(default=None, repr=False, compare=False)
    operator_monotone: bool = True
    label: str = ""

    @property
    def name(self) -> str:
        if self.kind == "custom":
            return self.label or "custom"
        if self.alpha is None:
            return self.kind
        return f"{self.kind}({self.alpha:g})"


@dataclass(frozen=True, slots=True)
class NMeanSpec:
    """n-variable mean: weighted arithmetic or harmonic base, optionally deformed by sigma."""

    base: str
    weights: Weights
    deform: Optional[MeanTwoSpec] = None

    @property
    def name(self) -> str:
        if self.deform is None:
            return self.base
        return f"{self.base}[{self.deform.name}]"


@dataclass(frozen=True, slots=True)
class SolveTrace:
    """Outcome of a fixed-point or Karcher solve."""

    iterations: int
    residual: float
    converged: bool
    tol: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "iterations": self.iterations,
            "residual": self.residual,
            "converged": self.converged,
            "tol": self.tol,
        }


@dataclass(frozen=True, slots=True, eq=False)
class PositiveMapSpec:
    """Unital positive linear map.

    ``kind`` is one of identity, compression, pinching, normalized_trace.
    Compressions carry an isometry ``V`` (dim_in x k); pinchings carry a
    partition of ``range(dim_in)`` into blocks.
    """

    kind: str
    dim_in: int
    V: Optional[np.ndarray] = None
    blocks: Optional[Tuple[Tuple[int, ...], ...]] = None

    @property
    def dim_out(self) -> int:
        if self.kind == "compression":
            assert self.V is not None
            return int(self.V.shape[1])
        if self.kind == "normalized_trace":
            return 1
        return self.dim_in


@dataclass(frozen=True, slots=True, eq=False)
class PsiMapSpec:
    """Direct-sum average X = A1 + ... + An  ->  sum_j w_j Phi(A_j)."""

    phi: PositiveMapSpec
    weights: Weights


@dataclass(frozen=True, slots=True, eq=False)
class CheckInstance:
    """Randomized input for one inequality check."""

    seed: int
    bounds: SpectralBounds
    matrices: Tuple[SpdMatrix, ...]
    mean: NMeanSpec
    phi: PositiveMapSpec
    commuting: bool = False

    @property
    def dim(self) -> int:
        return self.matrices[0].dim

    @property
    def n(self) -> int:
        return len(self.matrices)

    @property
    def weights(self) -> Weights:
        return self.mean.weights


@dataclass(slots=True)
class Comparison:
    """One inequality lower <= upper, with margin relative to its scale."""

    label: str
    margin: float
    raw: float
    scale: float

    def to_dict(self) -> Dict[str, Any]:
        return {"label": self.label, "margin": self.margin, "raw": self.raw, "scale": self.scale}


@dataclass(slots=True)
class CheckReport:
    """Outcome of one inequality check on one instance."""

    name: str
    params: Dict[str, Any]
    margin: float
    holds: bool
    seed: int
    dim: int
    n: int
    bounds: Tuple[float, float]
    commuting: bool = False
    comparisons: List[Comparison] = field(default_factory=list)
    error: Optional[str] = None
    artifacts: Optional[Dict[str, Any]] = None

    @property
    def failed(self) -> bool:
        return self.error is not None or not self.holds

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "name": self.name,
            "params": self.params,
            "margin": self.margin if math.isfinite(self.margin) else None,
            "holds": self.holds,
            "seed": self.seed,
            "dim": self.dim,
            "n": self.n,
            "bounds": list(self.bounds),
            "commuting": self.commuting,
            "comparisons": [comparison.to_dict() for comparison in self.comparisons],
        }
        if self.error is not None:
            payload["error"] = self.error
        return payload


@dataclass(slots=True)
class CheckSummary:
    """Aggregate over all reports of one check."""

    name: str
    trials: int = 0
    failures: int = 0
    errors: int = 0
    min_margin: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "trials": self.trials,
            "failures": self.failures,
            "errors": self.errors,
            "min_margin": self.min_margin,
        }


@dataclass(slots=True)
class SuiteResult:
    """Reports of one suite run in job order, plus per-check summaries."""

    names: List[str]
    seed: int
    reports: List[CheckReport] = field(default_factory=list)
    summary: Dict[str, CheckSummary] = field(default_factory=dict)
    wall_time: float = 0.0  # excluded from the canonical report body

    @property
    def failures(self) -> int:
        return sum(1 for report in self.reports if report.failed)


@dataclass(slots=True)
class ProbeResult:
    """Smallest reverse information monotonicity margin seen by a tightness probe."""

    m: float
    M: float
    alpha: float
    beta: float
    min_margin: float
    angle: float
    samples: int

    @property
    def ratio(self) -> float:
        """min_margin relative to beta(m, M, alpha)."""

        return self.min_margin / self.beta if self.beta else math.inf

    def to_dict(self) -> Dict[str, Any]:
        return {
            "m": self.m,
            "M": self.M,
            "alpha": self.alpha,
            "beta": self.beta,
            "min_margin": self.min_margin,
            "angle": self.angle,
            "samples": self.samples,
        }

"""Unital positive linear maps and the direct-sum average Psi."""

from __future__ import annotations

from typing import Any, Dict, Sequence

import numpy as np

from meanslab.errors import ValidationError
from meanslab.models import PositiveMapSpec, PsiMapSpec, SpdMatrix, Weights
from meanslab.services import spd
from meanslab.services.validators import require, validate_blocks, validate_isometry, validate_lengths

MAP_KINDS = ("identity", "compression", "pinching", "normalized_trace")


def identity_map(dim: int) -> PositiveMapSpec:
    return PositiveMapSpec(kind="identity", dim_in=dim)


def compression(V: np.ndarray | Sequence[Sequence[float]]) -> PositiveMapSpec:
    """A -> V^T A V for an isometry V (dim x k)."""

    array = np.array(V, dtype=float, copy=True)
    require(validate_isometry(array))
    array.setflags(write=False)
    return PositiveMapSpec(kind="compression", dim_in=int(array.shape[0]), V=array)


def pinching(blocks: Sequence[Sequence[int]], dim: int) -> PositiveMapSpec:
    """Block-diagonal restriction along a partition of the coordinates."""

    require(validate_blocks(blocks, dim))
    frozen = tuple(tuple(int(index) for index in block) for block in blocks)
    return PositiveMapSpec(kind="pinching", dim_in=dim, blocks=frozen)


def normalized_trace(dim: int) -> PositiveMapSpec:
    """A -> (tr A / dim) as a 1x1 matrix."""

    return PositiveMapSpec(kind="normalized_trace", dim_in=dim)


def random_compression(dim: int, rng: np.random.Generator, k: int | None = None) -> PositiveMapSpec:
    """Compression onto a random k-dimensional subspace, k < dim when dim > 1."""

    if dim == 1:
        return identity_map(1)
    if k is None:
        k = int(rng.integers(1, dim))
    if not 1 <= k < dim:
        raise ValidationError(f"compression needs 1 <= k < dim, got k={k}, dim={dim}")
    q, r = np.linalg.qr(rng.standard_normal((dim, k)))
    return compression(q * np.sign(np.where(np.diag(r) == 0, 1.0, np.diag(r))))


def random_pinching(dim: int, rng: np.random.Generator) -> PositiveMapSpec:
    """Pinching along a random partition into contiguous blocks of a shuffled order."""

    order = rng.permutation(dim)
    cuts = sorted(rng.choice(np.arange(1, dim), size=int(rng.integers(0, dim)), replace=False)) if dim > 1 else []
    blocks = [sorted(int(i) for i in chunk) for chunk in np.split(order, cuts) if len(chunk)]
    return pinching(blocks, dim)


def coordinate_compression(dim: int, rng: np.random.Generator) -> PositiveMapSpec:
    """Compression onto a random proper set of coordinate axes (keeps diagonal inputs diagonal)."""

    if dim == 1:
        return identity_map(1)
    k = int(rng.integers(1, dim))
    chosen = np.sort(rng.choice(dim, size=k, replace=False))
    return compression(np.eye(dim)[:, chosen])


def apply_map(phi: PositiveMapSpec, A: spd.MatrixLike) -> np.ndarray:
    """Phi(A) as a symmetric array."""

    array = spd.as_array(A)
    if array.shape != (phi.dim_in, phi.dim_in):
        raise ValidationError(f"Map expects a {phi.dim_in}x{phi.dim_in} matrix, got {array.shape}")
    if phi.kind == "identity":
        return array.copy()
    if phi.kind == "compression":
        assert phi.V is not None
        return spd.symmetrize(phi.V.T @ array @ phi.V)
    if phi.kind == "pinching":
        assert phi.blocks is not None
        out = np.zeros_like(array)
        for block in phi.blocks:
            index = np.ix_(block, block)
            out[index] = array[index]
        return out
    if phi.kind == "normalized_trace":
        return np.array([[float(np.trace(array)) / phi.dim_in]])
    raise ValidationError(f"Unknown map kind {phi.kind!r}")


def map_spd(phi: PositiveMapSpec, A: spd.MatrixLike) -> SpdMatrix:
    """Phi(A) for positive definite A, which stays positive definite."""

    return spd.spd_from_entries(apply_map(phi, A))


def apply_psi(psi: PsiMapSpec, matrices: Sequence[spd.MatrixLike]) -> np.ndarray:
    """sum_j w_j Phi(A_j)."""

    require(validate_lengths(len(psi.weights), len(matrices)))
    spd.require_same_dimension(matrices)
    total = np.zeros((psi.phi.dim_out, psi.phi.dim_out))
    for weight, A in zip(psi.weights.w, matrices):
        if weight > 0:
            total += weight * apply_map(psi.phi, A)
    return spd.symmetrize(total)


def psi(phi: PositiveMapSpec, weights: Weights) -> PsiMapSpec:
    return PsiMapSpec(phi=phi, weights=weights)


def map_to_dict(phi: PositiveMapSpec) -> Dict[str, Any]:
    payload: Dict[str, Any] = {"kind": phi.kind, "dim": phi.dim_in}
    if phi.V is not None:
        payload["V"] = phi.V.tolist()
    if phi.blocks is not None:
        payload["blocks"] = [list(block) for block in phi.blocks]
    return payload


def map_from_dict(data: Dict[str, Any], dim: int | None = None) -> PositiveMapSpec:
    """Build a map from its JSON form; V is checked against the isometry invariant."""

    kind = data.get("kind")
    if kind not in MAP_KINDS:
        raise ValidationError(f"map.kind must be one of {', '.join(MAP_KINDS)}, got {kind!r}")
    if kind == "compression":
        if data.get("V") is None:
            raise ValidationError("map.V is required for a compression")
        phi = compression(data["V"])
        if dim is not None and phi.dim_in != dim:
            raise ValidationError(f"map.V has {phi.dim_in} rows, matrices have dimension {dim}")
        return phi
    size = data.get("dim", dim)
    if size is None:
        raise ValidationError("map.dim is required")
    size = int(size)
    if dim is not None and size != dim:
        raise ValidationError(f"map.dim is {size}, matrices have dimension {dim}")
    if kind == "pinching":
        if data.get("blocks") is None:
            raise ValidationError("map.blocks is required for a pinching")
        return pinching(data["blocks"], size)
    if kind == "normalized_trace":
        return normalized_trace(size)
    return identity_map(size)

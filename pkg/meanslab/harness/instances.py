"""Seeded random instances for the inequality checks, and their JSON form."""

from __future__ import annotations

from typing import Any, Dict, Sequence, Tuple

import numpy as np

from meanslab.errors import ValidationError
from meanslab.models import CheckInstance, NMeanSpec, SpectralBounds
from meanslab.services import means2, posmaps, spd
from meanslab.services.meansn import nmean_spec, weights_from
from meanslab.storage.jobs import matrix_from_json, matrix_to_json

SIGMA_KINDS = ("geometric", "arithmetic", "harmonic")
SIGMA_ALPHA_RANGE = (0.2, 0.9)
MAP_CHOICES = ("compression", "pinching", "normalized_trace")


def job_seed(master_seed: int, index: int) -> int:
    """Deterministic per-job seed derived from (master seed, job index)."""

    return int(np.random.SeedSequence([master_seed, index]).generate_state(1)[0])


def _random_sigma(rng: np.random.Generator) -> means2.MeanTwoSpec:
    kind = SIGMA_KINDS[int(rng.integers(len(SIGMA_KINDS)))]
    alpha = float(rng.uniform(*SIGMA_ALPHA_RANGE))
    return means2.spec_from_dict({"kind": kind, "alpha": alpha})


def _random_map(dim: int, rng: np.random.Generator, commuting: bool) -> posmaps.PositiveMapSpec:
    choice = MAP_CHOICES[int(rng.integers(len(MAP_CHOICES)))]
    if choice == "compression":
        return posmaps.coordinate_compression(dim, rng) if commuting else posmaps.random_compression(dim, rng)
    if choice == "pinching":
        return posmaps.random_pinching(dim, rng)
    return posmaps.normalized_trace(dim)


def generate_instance(
    seed: int,
    dims: Tuple[int, int] = (2, 6),
    n_range: Tuple[int, int] = (2, 5),
    bounds: Sequence[Tuple[float, float]] = ((1.0, 2.0), (0.5, 4.0), (1.0, 16.0)),
    commuting: bool = False,
) -> CheckInstance:
    """Draw dimension, arity, bounds, weights, matrices, mean and map from one seed.

    Every matrix has spectrum in [m, M] with both endpoints attained, so the
    prescribed bounds are tight. Commuting instances use diagonal matrices
    and maps that keep diagonal inputs diagonal.
    """
    if not bounds:
        raise ValidationError("At least one (m, M) pair is required")
    rng = np.random.default_rng(seed)
    dim = int(rng.integers(dims[0], dims[1] + 1))
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    m, M = bounds[int(rng.integers(len(bounds)))]
    spectral = SpectralBounds(m=float(m), M=float(M))
    raw = rng.dirichlet(np.ones(n))
    weights = weights_from(list(raw / raw.sum()))
    generator = spd.random_diagonal_spd if commuting else spd.random_spd
    matrices = tuple(generator(dim, spectral, rng) for _ in range(n))
    base = "arithmetic" if rng.random() < 0.5 else "harmonic"
    mean = nmean_spec(base, weights, _random_sigma(rng))
    phi = _random_map(dim, rng, commuting)
    return CheckInstance(seed=seed, bounds=spectral, matrices=matrices, mean=mean, phi=phi, commuting=commuting)


def replace_mean(instance: CheckInstance, mean: NMeanSpec) -> CheckInstance:
    return CheckInstance(
        seed=instance.seed,
        bounds=instance.bounds,
        matrices=instance.matrices,
        mean=mean,
        phi=instance.phi,
        commuting=instance.commuting,
    )


def instance_to_dict(instance: CheckInstance) -> Dict[str, Any]:
    mean: Dict[str, Any] = {"base": instance.mean.base}
    if instance.mean.deform is not None:
        mean["sigma"] = means2.spec_to_dict(instance.mean.deform)
    return {
        "seed": instance.seed,
        "bounds": [instance.bounds.m, instance.bounds.M],
        "commuting": instance.commuting,
        "weights": list(instance.weights.w),
        "mean": mean,
        "map": posmaps.map_to_dict(instance.phi),
        "matrices": [matrix_to_json(A) for A in instance.matrices],
    }


def instance_from_dict(data: Dict[str, Any]) -> CheckInstance:
    """Rebuild an instance serialized by instance_to_dict."""

    try:
        matrices = tuple(matrix_from_json(entry) for entry in data["matrices"])
        m, M = data["bounds"]
        weights = weights_from(data["weights"])
        mean_data = data["mean"]
        sigma = mean_data.get("sigma")
        mean = nmean_spec(mean_data["base"], weights, means2.spec_from_dict(sigma) if sigma else None)
        phi = posmaps.map_from_dict(data["map"], matrices[0].dim)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(f"Malformed instance: {exc}") from exc
    return CheckInstance(
        seed=int(data.get("seed", 0)),
        bounds=SpectralBounds(m=float(m), M=float(M)),
        matrices=matrices,
        mean=mean,
        phi=phi,
        commuting=bool(data.get("commuting", False)),
    )

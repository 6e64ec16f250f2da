"""Tightness probe for the reverse information monotonicity bound."""

from __future__ import annotations

import logging
import math
from typing import Iterable

import numpy as np

from meanslab.config import SolverConfig
from meanslab.models import NMeanSpec, ProbeResult, SpectralBounds
from meanslab.services import constants, posmaps, spd
from meanslab.services.means2 import harmonic
from meanslab.services.meansn import nmean, weights_from
from meanslab.services.validators import require, validate_bounds

logger = logging.getLogger("meanslab.suite")


def _rotated(bounds: SpectralBounds, angle: float) -> spd.SpdMatrix:
    c, s = math.cos(angle), math.sin(angle)
    R = np.array([[c, -s], [s, c]])
    return spd.spd_from_entries(spd.symmetrize(R @ np.diag([bounds.m, bounds.M]) @ R.T))


def probe_margin(bounds: SpectralBounds, angle: float, alpha: float = 1.0, solver: SolverConfig | None = None) -> float:
    """Margin alpha Phi(M(A)) + beta I - M(Phi(A)) for the mirrored pair at one angle.

    A_1 and A_2 have spectrum exactly {m, M} with eigenvectors rotated by
    +angle and -angle; Phi compresses onto the first coordinate.
    """
    pair = [_rotated(bounds, angle), _rotated(bounds, -angle)]
    spec = NMeanSpec(base="harmonic", weights=weights_from([0.5, 0.5]), deform=harmonic(0.5))
    phi = posmaps.compression([[1.0], [0.0]])
    lhs, _ = nmean(spec, [posmaps.map_spd(phi, A) for A in pair], solver)
    mean, _ = nmean(spec, pair, solver)
    rhs = alpha * posmaps.apply_map(phi, mean) + constants.beta(bounds.m, bounds.M, alpha)
    return float(rhs[0, 0] - lhs.entries[0, 0])


def tightness_probe(
    bounds: SpectralBounds,
    seeds: int | Iterable[int] = 10_000,
    alpha: float = 1.0,
    solver: SolverConfig | None = None,
) -> ProbeResult:
    """Smallest margin over seeded angles in [0, pi/2].

    Args:
        bounds: Spectral bounds (m, M) of both matrices
        seeds: Number of seeds (0..n-1) or an explicit iterable of seeds
        alpha: Weight of Phi(M(A)) in the bound
        solver: Solver settings for the deformed means

    Returns:
        ProbeResult with the best margin and the angle attaining it
    """
    require(validate_bounds(bounds.m, bounds.M))
    seed_list = list(range(seeds)) if isinstance(seeds, int) else list(seeds)
    best_margin = math.inf
    best_angle = math.nan
    for seed in seed_list:
        angle = float(np.random.default_rng(seed).uniform(0.0, math.pi / 2.0))
        margin = probe_margin(bounds, angle, alpha, solver)
        if margin < best_margin:
            best_margin, best_angle = margin, angle
    result = ProbeResult(
        m=bounds.m,
        M=bounds.M,
        alpha=alpha,
        beta=constants.beta(bounds.m, bounds.M, alpha),
        min_margin=best_margin,
        angle=best_angle,
        samples=len(seed_list),
    )
    logger.info(f"tightness probe ({bounds.m:g}, {bounds.M:g}): min margin {best_margin:.3e} over {len(seed_list)} samples")
    return result

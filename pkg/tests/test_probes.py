import math

import pytest

from meanslab.errors import ValidationError
from meanslab.harness.probes import probe_margin, tightness_probe
from meanslab.models import SpectralBounds
from meanslab.services import constants


def test_probe_margin_is_nonnegative():
    bounds = SpectralBounds(1.0, 4.0)
    for angle in (0.0, 0.3, math.pi / 4, 1.2, math.pi / 2):
        assert probe_margin(bounds, angle) >= -1e-9


def test_probe_margin_aligned_axes():
    # both matrices equal diag(m, M); the compressed mean is m and the bound is m + beta
    bounds = SpectralBounds(1.0, 4.0)

    assert probe_margin(bounds, 0.0) == pytest.approx(constants.beta(1.0, 4.0, 1.0), abs=1e-10)


def test_tightness_probe_approaches_zero():
    result = tightness_probe(SpectralBounds(1.0, 4.0), seeds=200)

    assert result.samples == 200
    assert result.beta == pytest.approx(1.0)
    assert result.min_margin >= -1e-9
    assert result.ratio < 0.05
    assert 0.0 <= result.angle <= math.pi / 2


def test_tightness_probe_explicit_seeds():
    first = tightness_probe(SpectralBounds(1.0, 2.0), seeds=[3, 5, 8])
    second = tightness_probe(SpectralBounds(1.0, 2.0), seeds=[3, 5, 8])

    assert first.to_dict() == second.to_dict()
    assert first.samples == 3


def test_tightness_probe_rejects_degenerate_bounds():
    with pytest.raises(ValidationError):
        tightness_probe(SpectralBounds(2.0, 2.0), seeds=1)

import numpy as np
import pytest
from numpy.testing import assert_allclose

from meanslab.services import means2, meansn
from meanslab.services.oracles import (
    diagonal_karcher,
    diagonal_nmean,
    scalar_deformed_mean,
    scalar_karcher_mean,
    scalar_power_mean,
)


def test_scalar_power_mean_closed_form():
    assert scalar_power_mean([0.5, 0.5], 0.5, [1.0, 4.0]) == pytest.approx(2.25)
    assert scalar_power_mean([0.5, 0.5], -1.0, [2.0, 4.0]) == pytest.approx(8.0 / 3.0)
    assert scalar_power_mean([0.5, 0.5], 0.0, [1.0, 4.0]) == pytest.approx(2.0)


def test_scalar_karcher_mean():
    assert scalar_karcher_mean([0.25, 0.75], [1.0, 16.0]) == pytest.approx(8.0)


@pytest.mark.parametrize("base", ["arithmetic", "harmonic"])
def test_scalar_deformed_mean_geometric_is_power_mean(base):
    alpha = 0.4
    values = [0.5, 2.0, 3.0]
    weights = [0.2, 0.3, 0.5]
    expected = scalar_power_mean(weights, alpha if base == "arithmetic" else -alpha, values)

    assert scalar_deformed_mean(base, weights, means2.geometric(alpha), values) == pytest.approx(expected, rel=1e-13)


def test_scalar_deformed_mean_equal_values():
    assert scalar_deformed_mean("arithmetic", [0.5, 0.5], means2.harmonic(0.3), [2.0, 2.0]) == 2.0


def test_scalar_deformed_mean_lies_between_bases():
    weights = [0.3, 0.7]
    values = [1.0, 9.0]
    harmonic = 1.0 / (0.3 / 1.0 + 0.7 / 9.0)
    arithmetic = 0.3 * 1.0 + 0.7 * 9.0
    for sigma in (means2.arithmetic(0.5), means2.harmonic(0.5), means2.geometric(0.5)):
        value = scalar_deformed_mean("harmonic", weights, sigma, values)
        assert harmonic - 1e-12 <= value <= arithmetic + 1e-12


def test_diagonal_oracles():
    weights = meansn.weights_from([0.5, 0.5])
    spec = meansn.nmean_spec("arithmetic", weights, means2.geometric(0.5))
    diagonals = [[1.0, 4.0], [4.0, 9.0]]

    assert_allclose(diagonal_nmean(spec, diagonals), [2.25, 6.25])
    assert_allclose(diagonal_nmean(meansn.nmean_spec("arithmetic", weights), diagonals), [2.5, 6.5])
    assert_allclose(diagonal_karcher(weights.w, diagonals), [2.0, 6.0])
    assert isinstance(diagonal_karcher(weights.w, diagonals), np.ndarray)

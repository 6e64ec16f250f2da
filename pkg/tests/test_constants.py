import pytest

from meanslab.errors import DomainError, ValidationError
from meanslab.services import constants
from meanslab.services.oracles import beta_oracle, gamma_oracle


@pytest.mark.parametrize("h", [1.5, 2.0, 5.0, 10.0])
def test_kantorovich_classical_identity(h):
    classical = (h + 1.0) ** 2 / (4.0 * h)

    assert constants.kantorovich(h, 2.0) == pytest.approx(classical, rel=1e-12)
    assert constants.kantorovich(h, -1.0) == pytest.approx(classical, rel=1e-12)


def test_kantorovich_degenerate_values():
    assert constants.kantorovich(2.0, -1.0) == pytest.approx(1.125)
    assert constants.kantorovich(1.0, 3.7) == 1.0
    assert constants.kantorovich(5.0, 0.0) == 1.0
    assert constants.kantorovich(5.0, 1.0) == 1.0


def test_kantorovich_rejects_h_below_one():
    with pytest.raises(ValidationError):
        constants.kantorovich(0.5, 2.0)


def test_kantorovich_ratio():
    assert constants.kantorovich_ratio(1.0, 2.0) == pytest.approx(9.0 / 8.0)
    assert constants.kantorovich_ratio(3.0, 3.0) == 1.0


def test_specht_values():
    assert constants.specht(1.0) == 1.0
    values = [constants.specht(h) for h in (1.1, 2.0, 10.0)]
    assert all(value > 1.0 for value in values)
    assert values == sorted(values)


@pytest.mark.parametrize("h", [2.0, 3.0])
def test_specht_limit(h):
    assert constants.specht_limit_gap(h, 1.0, 1e-4) <= 1e-3
    assert abs(constants.kantorovich(h**1e-4, 1.0 / 1e-4) - constants.specht(h)) <= 1e-3


def test_beta_examples():
    assert constants.beta(1.0, 4.0, 1.0) == pytest.approx(1.0)
    assert constants.beta(1.0, 2.0, 9.0 / 8.0) == pytest.approx(0.0, abs=1e-12)
    # sqrt(alpha M m) = 20 lies above M, so the value is (1 - alpha) m
    assert constants.beta(1.0, 4.0, 100.0) == pytest.approx(-99.0)


def test_beta_vanishes_at_kantorovich_ratio():
    for m, M in [(1.0, 2.0), (0.5, 4.0), (1.0, 16.0)]:
        assert constants.beta(m, M, constants.kantorovich_ratio(m, M)) == pytest.approx(0.0, abs=1e-12)


def test_beta_rejects_bad_input():
    with pytest.raises(ValidationError):
        constants.beta(2.0, 1.0, 1.0)
    with pytest.raises(ValidationError):
        constants.beta(1.0, 2.0, 0.0)


@pytest.mark.parametrize("m,M,r", [(1.0, 2.0, 2.0), (0.5, 4.0, 3.0), (1.0, 16.0, -1.0), (1.0, 4.0, 0.5)])
def test_gamma_vanishes_at_kantorovich(m, M, r):
    alpha = constants.kantorovich(M / m, r)

    assert constants.gamma(m, M, r, alpha) == pytest.approx(0.0, abs=1e-10)


def test_gamma_undefined_exponents():
    with pytest.raises(DomainError):
        constants.gamma(1.0, 2.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        constants.gamma(1.0, 2.0, 0.0, 1.0)


def test_gamma_nonnegative_below_kantorovich():
    K = constants.kantorovich(2.0, 2.0)
    for alpha in (0.25, 0.5, 1.0, K):
        assert constants.gamma(1.0, 2.0, 2.0, alpha) >= -1e-12


@pytest.mark.parametrize("m,M,alpha", [(1.0, 4.0, 1.0), (1.0, 2.0, 0.5), (0.5, 4.0, 2.0), (1.0, 16.0, 0.25)])
def test_beta_matches_oracle(m, M, alpha):
    assert constants.beta(m, M, alpha) == pytest.approx(beta_oracle(m, M, alpha), abs=1e-8)


@pytest.mark.parametrize(
    "m,M,r,alpha",
    [(1.0, 2.0, 2.0, 1.0), (0.25, 1.0, -1.0, 1.0), (1.0, 4.0, 0.5, 1.0), (0.5, 4.0, 3.0, 0.5), (1.0, 16.0, -0.5, 2.0)],
)
def test_gamma_matches_oracle(m, M, r, alpha):
    assert constants.gamma(m, M, r, alpha) == pytest.approx(gamma_oracle(m, M, r, alpha), abs=1e-8)


def test_logconvexity_and_improvement():
    assert constants.kantorovich_logconvexity_check(2.0, 0.5)
    assert constants.kantorovich_logconvexity_check(2.0, 2.0)
    improved, classical = constants.kantorovich_improvement(3.0, 1.0)
    assert improved == pytest.approx(classical, abs=1e-12)
    for h in (1.5, 2.0, 5.0):
        for r in (0.25, 0.5, 0.75):
            improved, classical = constants.kantorovich_improvement(h, r)
            assert improved < classical


@pytest.mark.parametrize("q,p", [(1.0, 2.0), (1.5, 3.0), (0.5, 1.0), (0.25, 2.0)])
def test_norm_chain_improvement(q, p):
    improved, classical = constants.norm_chain_improvement(1.0, 4.0, q, p)

    assert improved < classical


def test_norm_chain_constant_requires_order():
    with pytest.raises(ValidationError):
        constants.norm_chain_constant(2.0, 2.0, 1.0)


def test_order_interpolation_constant_extra_factor():
    base = constants.kantorovich(4.0**2, -0.125) ** 4.0
    assert constants.order_interpolation_constant(4.0, 0.25, 2.0) == pytest.approx(
        constants.kantorovich(4.0**0.25, 4.0) * base
    )
    assert constants.order_interpolation_constant(4.0, 1.0, 2.0) == pytest.approx(constants.kantorovich(16.0, -0.5))

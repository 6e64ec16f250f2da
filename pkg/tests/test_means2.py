import numpy as np
import pytest
from numpy.testing import assert_allclose

from meanslab.errors import ValidationError
from meanslab.models import SpectralBounds
from meanslab.services import means2, spd

BUILTINS = [means2.geometric(0.3), means2.arithmetic(0.6), means2.harmonic(0.25), means2.geometric(0.5)]


def test_geometric_scalar():
    a = spd.spd_from_entries([[4.0]])
    b = spd.spd_from_entries([[9.0]])

    assert_allclose(means2.mean2(means2.geometric(0.5), a, b).entries, [[6.0]])


def test_geometric_with_identity_is_power(pair):
    _, B = pair
    result = means2.mean2(means2.geometric(0.3), spd.identity(3), B)

    assert_allclose(result.entries, spd.mat_pow(B, 0.3).entries, rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("spec", BUILTINS + [means2.left_trivial()], ids=lambda s: s.name)
def test_mean_of_equal_operands(pair, spec):
    A, _ = pair

    assert_allclose(means2.mean2(spec, A, A).entries, A.entries, rtol=1e-12, atol=1e-12)


def test_weighted_arithmetic_and_harmonic(pair):
    A, B = pair

    assert_allclose(means2.mean2(means2.arithmetic(0.25), A, B).entries, 0.75 * A.entries + 0.25 * B.entries)
    expected = spd.mat_inv(0.75 * spd.mat_inv(A).entries + 0.25 * spd.mat_inv(B).entries)
    assert_allclose(means2.mean2(means2.harmonic(0.25), A, B).entries, expected.entries, rtol=1e-12)


def test_left_trivial_returns_left(pair):
    A, B = pair

    assert means2.mean2(means2.left_trivial(), A, B) is A


@pytest.mark.parametrize("spec", BUILTINS, ids=lambda s: s.name)
def test_adjoint_round_trip(pair, spec):
    A, B = pair
    left = means2.mean2(means2.adjoint2(spec), A, B)
    right = spd.mat_inv(means2.mean2(spec, spd.mat_inv(A), spd.mat_inv(B)))

    assert_allclose(left.entries, right.entries, rtol=1e-9, atol=1e-12)


def test_adjoint_pairs():
    x = np.geomspace(0.1, 10.0, 7)

    harmonic = means2.adjoint2(means2.arithmetic(0.3))
    assert harmonic.kind == "harmonic" and harmonic.alpha == 0.3
    geometric = means2.geometric(0.4)
    assert means2.adjoint2(geometric) is geometric

    custom = means2.custom(lambda t: np.sqrt(t), operator_monotone=True)
    dual = means2.representing_function(means2.adjoint2(custom))
    assert_allclose(dual(x), np.sqrt(x))


@pytest.mark.parametrize("spec", BUILTINS, ids=lambda s: s.name)
def test_transformer_equality(pair, spec, rng):
    A, B = pair
    S = rng.standard_normal((3, 3)) + 3.0 * np.eye(3)
    left = spd.congruence(S, means2.mean2(spec, A, B))
    right = means2.mean2(spec, spd.congruence(S, A), spd.congruence(S, B))

    assert_allclose(left.entries, right.entries, rtol=1e-9, atol=1e-9)


def test_mean2_many_matches_mean2(pair):
    A, B = pair
    spec = means2.geometric(0.7)
    batch = means2.mean2_many(spec, A, [B, A])

    assert_allclose(batch[0].entries, means2.mean2(spec, A, B).entries, rtol=1e-12)
    assert_allclose(batch[1].entries, A.entries, rtol=1e-12, atol=1e-12)


def test_is_pmi():
    assert means2.is_pmi(means2.geometric(0.5))
    assert means2.is_pmi(means2.arithmetic(0.3))
    # f(x) = 2x / (1 + x) tends to 2 while f(x)^r tends to 2^r
    assert not means2.is_pmi(means2.harmonic(0.5))


def test_custom_requires_normalization():
    with pytest.raises(ValidationError, match="f\\(1\\) = 1"):
        means2.custom(lambda t: 2.0 * t)


def test_custom_estimates_derivative():
    spec = means2.custom(lambda t: np.sqrt(t))

    assert spec.alpha0 == pytest.approx(0.5, abs=1e-8)
    assert not spec.operator_monotone


def test_weight_out_of_range():
    with pytest.raises(ValidationError):
        means2.geometric(1.5)


def test_spec_dict_round_trip():
    spec = means2.spec_from_dict({"kind": "harmonic", "alpha": 0.2})

    assert means2.spec_to_dict(spec) == {"kind": "harmonic", "alpha": 0.2}
    with pytest.raises(ValidationError):
        means2.spec_from_dict({"kind": "median"})
    with pytest.raises(ValidationError):
        means2.spec_to_dict(means2.custom(lambda t: t))


@pytest.mark.parametrize("spec", BUILTINS, ids=lambda s: s.name)
def test_monotone_in_both_arguments(pair, spec, rng):
    A, B = pair
    bump = SpectralBounds(0.05, 1.0)
    larger_A = spd.spd_from_entries(A.entries + spd.random_spd(3, bump, rng).entries)
    larger_B = spd.spd_from_entries(B.entries + spd.random_spd(3, bump, rng).entries)
    base = means2.mean2(spec, A, B)

    assert spd.loewner_leq(base, means2.mean2(spec, larger_A, B))[0]
    assert spd.loewner_leq(base, means2.mean2(spec, A, larger_B))[0]
    assert spd.loewner_leq(base, means2.mean2(spec, larger_A, larger_B))[0]


@pytest.mark.parametrize("spec", BUILTINS, ids=lambda s: s.name)
def test_between_weighted_harmonic_and_arithmetic(pair, spec):
    A, B = pair
    X = means2.mean2(spec, A, B)

    assert spd.loewner_leq(means2.mean2(means2.harmonic(spec.alpha0), A, B), X)[0]
    assert spd.loewner_leq(X, means2.mean2(means2.arithmetic(spec.alpha0), A, B))[0]

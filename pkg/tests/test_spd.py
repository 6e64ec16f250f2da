import numpy as np
import pytest
from numpy.testing import assert_allclose

from meanslab.errors import DomainError, ValidationError
from meanslab.models import SpectralBounds
from meanslab.services import spd


def test_eig_sym_known_spectrum():
    values, basis = spd.eig_sym(np.array([[2.0, 1.0], [1.0, 2.0]]))

    assert_allclose(values, [1.0, 3.0])
    assert_allclose(basis.T @ basis, np.eye(2), atol=1e-14)


def test_spd_from_entries_rejects_asymmetric():
    with pytest.raises(ValidationError, match="not symmetric"):
        spd.spd_from_entries([[1.0, 0.5], [0.0, 1.0]])


def test_spd_from_entries_rejects_indefinite():
    with pytest.raises(DomainError) as info:
        spd.spd_from_entries([[1.0, 0.0], [0.0, -2.0]])

    assert info.value.value == pytest.approx(-2.0)


def test_spd_from_entries_rejects_non_square():
    with pytest.raises(ValidationError, match="square"):
        spd.spd_from_entries([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])


def test_entries_are_read_only():
    A = spd.spd_from_entries(np.eye(2))

    with pytest.raises(ValueError):
        A.entries[0, 0] = 5.0


def test_matrix_fn_examples():
    assert_allclose(spd.matrix_fn(np.diag([2.0, 5.0]), np.reciprocal), np.diag([0.5, 0.2]))
    assert_allclose(spd.matrix_fn(np.diag([1.0, np.e**2]), np.log), np.diag([0.0, 2.0]), atol=1e-15)
    A = spd.spd_from_entries([[2.0, 1.0], [1.0, 2.0]])
    assert_allclose(spd.matrix_fn(A, lambda t: t), A.entries)


def test_matrix_fn_undefined_value():
    with pytest.raises(DomainError):
        spd.matrix_fn(np.diag([-1.0, 2.0]), np.log)


def test_functional_calculus_homomorphism(rng):
    A = spd.random_spd(4, SpectralBounds(0.5, 4.0), rng)
    composed = spd.matrix_fn(A, lambda t: np.sqrt(np.log(t) + 2.0))
    stepwise = spd.matrix_fn(spd.matrix_fn(A, lambda t: np.log(t) + 2.0), np.sqrt)

    assert_allclose(composed, stepwise, rtol=1e-9, atol=1e-12)


def test_power_log_exp_inverse(rng):
    assert_allclose(spd.mat_pow(np.diag([4.0, 9.0]), 0.5).entries, np.diag([2.0, 3.0]))
    assert_allclose(spd.mat_inv(np.eye(3)).entries, np.eye(3))

    A = spd.random_spd(5, SpectralBounds(0.5, 4.0), rng)
    assert_allclose(spd.mat_exp(spd.mat_log(A)).entries, A.entries, rtol=1e-10, atol=1e-12)
    assert_allclose(spd.mat_inv(A).entries @ A.entries, np.eye(5), atol=1e-12)


def test_roots_share_decomposition(rng):
    A = spd.random_spd(3, SpectralBounds(1.0, 16.0), rng)
    root, inv_root = spd.roots(A)

    assert_allclose(root @ root, A.entries, rtol=1e-12, atol=1e-12)
    assert_allclose(root @ inv_root, np.eye(3), atol=1e-12)


def test_congruence_examples():
    A = spd.spd_from_entries([[2.0, 1.0], [1.0, 2.0]])

    assert_allclose(spd.congruence(np.eye(2), A).entries, A.entries)
    assert_allclose(spd.congruence(2.0 * np.eye(2), A).entries, 4.0 * A.entries)
    assert_allclose(spd.congruence(np.diag([1.0, 2.0]), np.eye(2)).entries, np.diag([1.0, 4.0]))


def test_congruence_singular():
    with pytest.raises(ValidationError, match="singular"):
        spd.congruence(np.array([[1.0, 1.0], [1.0, 1.0]]), np.eye(2))


def test_loewner_leq_examples():
    A = spd.spd_from_entries([[2.0, 1.0], [1.0, 2.0]])

    assert spd.loewner_leq(A, A) == (True, pytest.approx(0.0, abs=1e-15))
    holds, margin = spd.loewner_leq(np.eye(2), 2.0 * np.eye(2))
    assert holds and margin == pytest.approx(1.0)
    holds, margin = spd.loewner_leq(np.diag([1.0, 3.0]), np.diag([2.0, 2.0]))
    assert not holds and margin == pytest.approx(-1.0)


def test_op_norm():
    assert spd.op_norm(np.eye(4)) == pytest.approx(1.0)
    assert spd.op_norm(np.diag([-3.0, 2.0])) == pytest.approx(3.0)
    assert spd.op_norm(spd.spd_from_entries([[2.0, 1.0], [1.0, 2.0]])) == pytest.approx(3.0)


def test_spectral_bounds():
    bounds = spd.spectral_bounds(np.diag([0.5, 4.0]))

    assert (bounds.m, bounds.M, bounds.h) == (0.5, 4.0, 8.0)
    assert spd.spectral_bounds(np.eye(3)).h == 1.0
    assert spd.spectral_bounds(np.array([[2.0, 1.0], [1.0, 2.0]])).as_tuple() == pytest.approx((1.0, 3.0))


def test_random_spd_is_deterministic_and_tight():
    bounds = SpectralBounds(1.0, 4.0)
    first = spd.random_spd(3, bounds, 7)
    second = spd.random_spd(3, bounds, 7)

    assert_allclose(first.entries, second.entries, rtol=0, atol=0)
    assert first.bounds.m == pytest.approx(1.0, abs=1e-12)
    assert first.bounds.M == pytest.approx(4.0, abs=1e-12)


def test_random_spd_one_dimensional():
    A = spd.random_spd(1, SpectralBounds(2.0, 2.0), 3)

    assert_allclose(A.entries, [[2.0]])


def test_random_diagonal_spd_is_diagonal(rng):
    A = spd.random_diagonal_spd(4, SpectralBounds(0.5, 4.0), rng)

    assert_allclose(A.entries, np.diag(np.diag(A.entries)))
    assert sorted(np.diag(A.entries))[0] == pytest.approx(0.5)


@pytest.mark.parametrize("r, s", [(0.5, 0.5), (-1.0, 2.5), (0.3, -0.8), (1.7, 1.0)])
def test_mat_pow_exponents_add(rng, r, s):
    A = spd.random_spd(4, SpectralBounds(0.5, 4.0), rng)
    product = spd.mat_pow(A, r).entries @ spd.mat_pow(A, s).entries

    assert_allclose(product, spd.mat_pow(A, r + s).entries, rtol=1e-10, atol=1e-12)


def test_loewner_order_is_antisymmetric_and_transitive(rng):
    bounds = SpectralBounds(0.5, 4.0)
    A = spd.random_spd(4, bounds, rng)
    B = A.entries + spd.random_spd(4, SpectralBounds(0.1, 1.0), rng).entries
    C = B + spd.random_spd(4, SpectralBounds(0.1, 1.0), rng).entries

    assert spd.loewner_leq(A, B)[0] and spd.loewner_leq(B, C)[0]
    assert spd.loewner_leq(A, C)[0]
    assert not spd.loewner_leq(B, A)[0]

    for _ in range(50):
        X = spd.random_spd(3, bounds, rng)
        Y = spd.random_spd(3, bounds, rng)
        if spd.loewner_leq(X, Y, tol=0.0)[0] and spd.loewner_leq(Y, X, tol=0.0)[0]:
            assert_allclose(X.entries, Y.entries)
    assert spd.loewner_leq(A, A, tol=0.0)[0]


@pytest.mark.parametrize("p", [0.0, 0.25, 0.5, 0.9, 1.0])
def test_powers_up_to_one_preserve_order(rng, p):
    for _ in range(10):
        A = spd.random_spd(4, SpectralBounds(0.5, 4.0), rng)
        B = spd.spd_from_entries(A.entries + spd.random_spd(4, SpectralBounds(0.01, 2.0), rng).entries)
        assert spd.loewner_leq(spd.mat_pow(A, p), spd.mat_pow(B, p))[0]


def test_square_does_not_preserve_order():
    A = spd.spd_from_entries([[2.0, 1.0], [1.0, 1.0]])
    B = spd.spd_from_entries([[3.0, 1.0], [1.0, 1.0]])

    assert spd.loewner_leq(A, B)[0]
    assert not spd.loewner_leq(spd.mat_pow(A, 2.0), spd.mat_pow(B, 2.0))[0]


def test_op_norm_orthogonal_invariance(rng):
    A = spd.random_spd(5, SpectralBounds(0.5, 4.0), rng)
    Q = spd.random_orthogonal(5, rng)

    assert spd.op_norm(spd.congruence(Q, A)) == pytest.approx(spd.op_norm(A), rel=1e-12)
    assert spd.op_norm(Q.T @ (A.entries - 5.0 * np.eye(5)) @ Q) == pytest.approx(spd.op_norm(A.entries - 5.0 * np.eye(5)), rel=1e-12)

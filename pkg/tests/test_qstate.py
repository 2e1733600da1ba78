import numpy as np
import pytest
from hypothesis import given, strategies as st

from spinkick import (
    MAX_SPINS,
    SizeError,
    StateVector,
    apply_y_rotation,
    bits_to_index,
    index_to_bits,
    inner_product,
    make_basis_state,
    make_plus_state,
)
from spinkick.qstate import y_rotation_matrix

from conftest import random_state

seeds = st.integers(0, 2**32 - 1)
sizes = st.integers(1, 7)


@pytest.mark.parametrize(
    "n, value", [(1, 1 / np.sqrt(2)), (2, 0.5), (3, 2**-1.5)]
)
def test_plus_state_amplitudes(n, value):
    psi = make_plus_state(n)
    assert psi.dim == 2**n
    np.testing.assert_allclose(psi.amplitudes, value, atol=1e-15)
    assert psi.norm() == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("n", [0, -1, MAX_SPINS + 1])
def test_plus_state_size_error(n):
    with pytest.raises(SizeError):
        make_plus_state(n)


def test_cap_is_at_least_14():
    assert MAX_SPINS >= 14
    assert make_plus_state(14).dim == 16384


def test_state_rejects_wrong_length_and_norm():
    with pytest.raises(SizeError):
        StateVector(2, np.ones(3) / np.sqrt(3))
    with pytest.raises(ValueError):
        StateVector(1, [1.0, 1.0])


def test_amplitudes_are_read_only():
    psi = make_plus_state(2)
    with pytest.raises(ValueError):
        psi.amplitudes[0] = 1.0


def test_basis_round_trip():
    for n in range(1, 7):
        for idx in range(2**n):
            assert bits_to_index(index_to_bits(idx, n)) == idx


def test_spin_one_is_most_significant_bit():
    assert bits_to_index([1, 0, 0]) == 4
    assert index_to_bits(1, 3) == (0, 0, 1)
    assert make_basis_state("100").amplitudes[4] == 1


def test_rotation_pi_flips_zero_to_one():
    out = apply_y_rotation(make_basis_state("0"), [1], np.pi)
    np.testing.assert_allclose(out.amplitudes, [0, 1], atol=1e-15)


def test_rotation_half_pi():
    out = apply_y_rotation(make_basis_state("0"), [1], np.pi / 2)
    np.testing.assert_allclose(out.amplitudes, [np.cos(np.pi / 4), np.sin(np.pi / 4)], atol=1e-15)


def test_rotation_matches_kronecker_product(rng):
    # independent route: explicit dense operator
    n = 4
    psi = random_state(rng, n)
    theta = 0.7
    targets = [1, 3]
    ops = [y_rotation_matrix(theta) if q in targets else np.eye(2) for q in range(1, n + 1)]
    full = ops[0]
    for op in ops[1:]:
        full = np.kron(full, op)
    out = apply_y_rotation(psi, targets, theta)
    np.testing.assert_allclose(out.amplitudes, full @ psi.amplitudes, atol=1e-13)


def test_rotation_is_exp_of_spin_y():
    # exp(-i theta s_y) with s_y = sigma_y / 2, via eigen-decomposition
    theta = 1.3
    sy = np.array([[0, -1j], [1j, 0]]) / 2
    w, v = np.linalg.eigh(sy)
    expected = v @ np.diag(np.exp(-1j * theta * w)) @ v.conj().T
    np.testing.assert_allclose(y_rotation_matrix(theta), expected, atol=1e-14)


def test_rotation_target_errors():
    psi = make_plus_state(3)
    with pytest.raises(IndexError):
        apply_y_rotation(psi, [4], 1.0)
    with pytest.raises(IndexError):
        apply_y_rotation(psi, [0], 1.0)
    with pytest.raises(ValueError):
        apply_y_rotation(psi, [1, 1], 1.0)


def test_inner_product_examples():
    zero, one = make_basis_state("0"), make_basis_state("1")
    assert inner_product(zero, one) == 0
    assert inner_product(make_plus_state(1), zero) == pytest.approx(1 / np.sqrt(2), abs=1e-15)
    with pytest.raises(SizeError):
        inner_product(zero, make_plus_state(2))


@given(seeds, sizes)
def test_inner_product_self_is_one(seed, n):
    psi = random_state(np.random.default_rng(seed), n)
    assert inner_product(psi, psi) == pytest.approx(1.0, abs=1e-12)


def _targets(rng, n):
    k = rng.integers(1, n + 1)
    return list(rng.choice(np.arange(1, n + 1), size=k, replace=False))


@given(seeds, sizes, st.floats(-10, 10))
def test_rotation_preserves_norm(seed, n, theta):
    rng = np.random.default_rng(seed)
    out = apply_y_rotation(random_state(rng, n), _targets(rng, n), theta)
    assert abs(out.norm() - 1) < 1e-12


@given(seeds, sizes, st.floats(-10, 10))
def test_rotation_inverse(seed, n, theta):
    rng = np.random.default_rng(seed)
    psi = random_state(rng, n)
    targets = _targets(rng, n)
    back = apply_y_rotation(apply_y_rotation(psi, targets, theta), targets, -theta)
    assert np.max(np.abs(back.amplitudes - psi.amplitudes)) < 1e-12


@given(seeds, sizes, st.floats(-5, 5), st.floats(-5, 5))
def test_rotation_composition(seed, n, th1, th2):
    rng = np.random.default_rng(seed)
    psi = random_state(rng, n)
    targets = _targets(rng, n)
    two = apply_y_rotation(apply_y_rotation(psi, targets, th1), targets, th2)
    one = apply_y_rotation(psi, targets, th1 + th2)
    assert np.max(np.abs(two.amplitudes - one.amplitudes)) < 1e-12


@given(seeds, st.integers(2, 7), st.floats(-5, 5), st.floats(-5, 5))
def test_disjoint_rotations_commute(seed, n, th1, th2):
    rng = np.random.default_rng(seed)
    psi = random_state(rng, n)
    perm = list(rng.permutation(np.arange(1, n + 1)))
    cut = rng.integers(1, n)
    a, b = perm[:cut], perm[cut:]
    ab = apply_y_rotation(apply_y_rotation(psi, a, th1), b, th2)
    ba = apply_y_rotation(apply_y_rotation(psi, b, th2), a, th1)
    assert np.max(np.abs(ab.amplitudes - ba.amplitudes)) < 1e-12


def test_rotation_zero_is_identity(rng):
    psi = random_state(rng, 4)
    out = apply_y_rotation(psi, [1, 2, 3, 4], 0.0)
    np.testing.assert_array_equal(out.amplitudes, psi.amplitudes)

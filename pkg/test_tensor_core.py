import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clifford import gamma_chiral, pauli
from tensor_core import (
    anticommutator,
    as_matrix,
    commutator,
    dagger,
    det,
    identity,
    kron,
    kron_all,
    matrix_from_dict,
    matrix_from_json,
    matrix_to_dict,
    matrix_to_json,
    max_abs,
    nullspace,
    random_unitary,
    vector_to_list,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def random_matrix(rng, n, m=None):
    m = n if m is None else m
    return rng.normal(size=(n, m)) + 1j * rng.normal(size=(n, m))


def test_kron_entry_layout():
    k = kron(pauli(1), identity(2))
    assert k.shape == (4, 4)
    assert k[0, 2] == 1 and k[1, 3] == 1 and k[0, 0] == 0


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_kron_is_associative(seed):
    rng = np.random.default_rng(seed)
    a, b, c = (random_matrix(rng, 2) for _ in range(3))
    assert max_abs(kron(kron(a, b), c) - kron(a, kron(b, c))) <= 1e-12


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_kron_mixed_product(seed):
    rng = np.random.default_rng(seed)
    a, b, c, d = (random_matrix(rng, 2) for _ in range(4))
    assert max_abs(kron(a, b) @ kron(c, d) - kron(a @ c, b @ d)) <= 1e-12


def test_kron_all_matches_nested_kron():
    mats = [pauli(1), pauli(2), pauli(3)]
    assert max_abs(kron_all(mats) - kron(pauli(1), kron(pauli(2), pauli(3)))) == 0


def test_nullspace_of_zero_matrix_is_everything():
    assert len(nullspace(np.zeros((2, 2)))) == 2


def test_nullspace_of_identity_is_empty():
    assert nullspace(identity(4)) == []


def test_nullspace_rank_one():
    (v,) = nullspace([[1, 1], [1, 1]])
    assert abs(np.linalg.norm(v) - 1) <= 1e-14
    assert max_abs(np.array([[1, 1], [1, 1]]) @ v) <= 1e-14


def test_nullspace_basis_is_orthonormal():
    rng = np.random.default_rng(7)
    a = random_matrix(rng, 4, 2) @ random_matrix(rng, 2, 4)
    basis = np.column_stack(nullspace(a))
    assert basis.shape == (4, 2)
    assert max_abs(dagger(basis) @ basis - identity(2)) <= 1e-12
    assert max_abs(a @ basis) <= 1e-12


def test_nullspace_rejects_non_square():
    with pytest.raises(ValueError):
        nullspace(np.ones((2, 3)))


def test_nullspace_rejects_bad_tolerance():
    with pytest.raises(ValueError):
        nullspace(identity(2), tol=0)


def test_det_of_gamma0():
    assert abs(det(gamma_chiral().gamma0) - 1) <= 1e-14


def test_as_matrix_rejects_nan_and_vectors():
    with pytest.raises(ValueError):
        as_matrix([[np.nan, 0], [0, 1]])
    with pytest.raises(ValueError):
        as_matrix([1, 2, 3])


def test_matrices_are_read_only():
    m = as_matrix([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        m[0, 0] = 5


def test_commutators_check_dimensions():
    with pytest.raises(ValueError):
        anticommutator(identity(2), identity(4))
    with pytest.raises(ValueError):
        commutator(identity(2), identity(4))


def test_pauli_anticommutators():
    for j in (1, 2, 3):
        for k in (1, 2, 3):
            expected = 2 * identity(2) if j == k else 0 * identity(2)
            assert max_abs(anticommutator(pauli(j), pauli(k)) - expected) == 0


def test_random_unitary_is_unitary():
    u = random_unitary(4, np.random.default_rng(3))
    assert max_abs(dagger(u) @ u - identity(4)) <= 1e-12


def test_matrix_json_schema():
    g2 = gamma_chiral().gamma2
    data = matrix_to_dict(g2)
    assert data["rows"] == 4 and data["cols"] == 4
    assert len(data["entries"]) == 16
    assert np.array_equal(matrix_from_json(matrix_to_json(g2)), g2)


def test_matrix_from_dict_rejects_wrong_entry_count():
    with pytest.raises(ValueError):
        matrix_from_dict({"rows": 2, "cols": 2, "entries": [[1, 0]]})


def test_vector_to_list_pairs():
    assert vector_to_list([1j, 2]) == [[0.0, 1.0], [2.0, 0.0]]


def test_det_examples():
    assert det(identity(4)) == pytest.approx(1)
    assert det(np.diag([2, 3, 1, 1])) == pytest.approx(6)
    assert det(pauli(2)) == pytest.approx(-1)


def test_det_rejects_non_square():
    with pytest.raises(ValueError):
        det(np.ones((2, 3)))


def unit_disk_matrix(rng, n):
    radius = np.sqrt(rng.uniform(size=(n, n)))
    return radius * np.exp(2j * np.pi * rng.uniform(size=(n, n)))


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_det_is_multiplicative(seed):
    rng = np.random.default_rng(seed)
    a, b = unit_disk_matrix(rng, 4), unit_disk_matrix(rng, 4)
    expected = det(a) * det(b)
    assert abs(det(a @ b) - expected) <= 1e-10 * max(1.0, abs(expected))


def test_pauli_commutator():
    assert max_abs(commutator(pauli(1), pauli(2)) - 2j * pauli(3)) == 0
    assert max_abs(anticommutator(pauli(1), pauli(1)) - 2 * identity(2)) == 0

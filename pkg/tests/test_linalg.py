import itertools

import numpy as np
import pytest

from ncsohs import NotPsdError
from ncsohs.linalg import (
    as_sym,
    block_diag,
    column_space_contains,
    is_pd,
    is_psd,
    min_eigenvalue,
    permute_congruent,
    pseudo_inverse,
    schur_complement,
    zero_diag_implies_zero_line_check,
)


def minors_psd(M, tol=1e-9):
    """Every principal minor nonnegative."""
    k = len(M)
    return all(
        np.linalg.det(M[np.ix_(S, S)]) >= -tol
        for r in range(1, k + 1)
        for S in itertools.combinations(range(k), r)
    )


def test_psd_examples():
    assert is_psd([[1, 4], [4, 16]])
    assert not is_pd([[1, 4], [4, 16]])
    assert not is_psd([[1, 1, 0], [1, 1, 1], [0, 1, 1]])
    assert np.isclose(np.linalg.det([[1, 1, 0], [1, 1, 1], [0, 1, 1]]), -1)
    assert is_pd(np.eye(3))
    assert min_eigenvalue(np.zeros((0, 0))) == np.inf


def test_psd_agrees_with_principal_minors(rng):
    for _ in range(200):
        k = rng.integers(1, 6)
        B = rng.integers(-2, 3, size=(k, k)).astype(float)
        M = B @ B.T if rng.random() < 0.5 else B + B.T
        assert is_psd(M) == minors_psd(M)


def test_as_sym_rejects_asymmetric():
    with pytest.raises(ValueError):
        as_sym([[1, 2], [0, 1]])
    with pytest.raises(ValueError):
        as_sym([1, 2, 3])


def test_permutation_congruence():
    assert permute_congruent([[1, 4], [4, 16]], [1, 0]).tolist() == [[16, 4], [4, 1]]
    with pytest.raises(ValueError):
        permute_congruent(np.eye(2), [0, 0])


def test_permutation_preserves_spectrum(rng):
    B = rng.normal(size=(5, 5))
    M = B + B.T
    s = rng.permutation(5)
    assert np.allclose(np.linalg.eigvalsh(M), np.linalg.eigvalsh(permute_congruent(M, s)))


def test_block_diag_psd_iff_blocks():
    A, B = np.array([[2.0, 1], [1, 2]]), np.array([[1.0, 2], [2, 1]])
    assert is_psd(block_diag([A, A]))
    assert not is_psd(block_diag([A, B]))
    assert block_diag([]).shape == (0, 0)


def test_zero_diagonal_forces_zero_row():
    assert zero_diag_implies_zero_line_check([[0, 0], [0, 1]])
    with pytest.raises(NotPsdError):
        zero_diag_implies_zero_line_check([[0, 1], [1, 1]])


def test_pseudo_inverse_penrose_conditions(rng):
    B = rng.normal(size=(4, 2))
    M = B @ B.T
    P = pseudo_inverse(M)
    assert np.allclose(M @ P @ M, M)
    assert np.allclose(P @ M @ P, P)
    assert np.allclose(P, np.linalg.pinv(M))


def test_schur_complement_criterion(rng):
    for _ in range(100):
        B = rng.normal(size=(5, rng.integers(1, 6)))
        M = B @ B.T
        A, C = M[:2, :2], M[2:, 2:]
        assert column_space_contains(A, M[:2, 2:])
        assert is_psd(schur_complement(M, 2), 1e-8)
    M = np.array([[1, 1, 1], [1, 1, -1], [1, -1, 5]], float)
    assert not column_space_contains(M[:2, :2], M[:2, 2:])
    with pytest.raises(ValueError):
        schur_complement(M, 0)


def test_column_space_of_rank_one():
    G = np.array([[1.0, 1], [1, 1]])
    assert column_space_contains(G, [1, 1])
    assert not column_space_contains(G, [1, -1])

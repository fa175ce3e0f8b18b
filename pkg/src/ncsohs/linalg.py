"""Dense symmetric matrix helpers: definiteness tests, pseudo-inverses, Schur complements."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np
import scipy.linalg

from .errors import NotPsdError


def as_sym(M, atol: float = 1e-12) -> np.ndarray:
    """Return ``M`` as an exactly symmetric float array.

    Raises ValueError if ``M`` is not square or is asymmetric beyond
    ``atol * (1 + max|M|)``.
    """
    A = np.array(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if A.size and np.max(np.abs(A - A.T)) > atol * (1.0 + np.max(np.abs(A))):
        raise ValueError("matrix is not symmetric")
    return 0.5 * (A + A.T)


def default_tol(M) -> float:
    A = np.asarray(M, dtype=float)
    norm = np.abs(A).sum(axis=1).max() if A.size else 0.0
    return 1e-9 * (1.0 + norm)


def min_eigenvalue(M) -> float:
    A = as_sym(M)
    if A.size == 0:
        return np.inf
    return float(np.linalg.eigvalsh(A)[0])


def is_psd(M, tol: float | None = None) -> bool:
    """``lambda_min(M) >= -tol``; default tol is ``1e-9 * (1 + ||M||_inf)``."""
    A = as_sym(M)
    if tol is None:
        tol = default_tol(A)
    return min_eigenvalue(A) >= -tol


def is_pd(M, tol: float | None = None) -> bool:
    A = as_sym(M)
    if tol is None:
        tol = default_tol(A)
    return min_eigenvalue(A) > tol


def permute_congruent(M, sigma: Sequence[int]) -> np.ndarray:
    """``P M P^t`` for the permutation ``sigma`` (0-based): ``out[i, j] = M[sigma[i], sigma[j]]``."""
    A = as_sym(M)
    s = [int(i) for i in sigma]
    if sorted(s) != list(range(A.shape[0])):
        raise ValueError(f"{sigma} is not a permutation of range({A.shape[0]})")
    return A[np.ix_(s, s)]


def block_diag(blocks: Sequence) -> np.ndarray:
    if not blocks:
        return np.zeros((0, 0))
    return scipy.linalg.block_diag(*[as_sym(b) for b in blocks])


def pseudo_inverse(M, tol: float = 1e-10) -> np.ndarray:
    """Moore-Penrose inverse by spectral truncation.

    Eigenvalues with ``|lambda| <= tol * max|lambda|`` are treated as zero.
    """
    A = as_sym(M)
    if A.size == 0:
        return A.copy()
    w, V = np.linalg.eigh(A)
    cutoff = tol * np.max(np.abs(w))
    keep = np.abs(w) > cutoff
    if not keep.any():
        return np.zeros_like(A)
    Vk = V[:, keep]
    P = (Vk / w[keep]) @ Vk.T
    return 0.5 * (P + P.T)


def column_space_contains(A, B, tol: float = 1e-9) -> bool:
    """Whether every column of ``B`` lies in the column space of symmetric ``A``."""
    A = as_sym(A)
    B = np.asarray(B, dtype=float)
    if B.ndim == 1:
        B = B[:, None]
    if B.size == 0:
        return True
    resid = B - A @ (pseudo_inverse(A) @ B)
    return np.linalg.norm(resid) <= tol * (1.0 + np.linalg.norm(B))


def split_blocks(M, m: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    A = as_sym(M)
    return A[:m, :m], A[:m, m:], A[m:, m:]


def schur_complement(M, m: int) -> np.ndarray:
    """``C - B^t A^+ B`` for ``M = [[A, B], [B^t, C]]`` with ``A`` of order ``m``."""
    k = np.shape(M)[0]
    if not 1 <= m < k:
        raise ValueError(f"split must satisfy 1 <= m < {k}")
    A, B, C = split_blocks(M, m)
    S = C - B.T @ pseudo_inverse(A) @ B
    return 0.5 * (S + S.T)


def zero_diag_implies_zero_line_check(M, tol: float = 1e-9) -> bool:
    """For PSD ``M``: every (near-)zero diagonal entry has a (near-)zero row.

    Raises NotPsdError if ``M`` is not PSD, since the implication only
    holds for PSD matrices.
    """
    A = as_sym(M)
    if not is_psd(A):
        raise NotPsdError("zero-diagonal check requires a PSD matrix")
    for i in range(A.shape[0]):
        if abs(A[i, i]) <= tol and np.max(np.abs(A[i])) > tol:
            return False
    return True

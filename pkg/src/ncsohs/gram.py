"""Gram-like representations ``f = W^* G W`` of symmetric polynomials."""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import AmbiguousDistribution, NotPsdError, UnrepresentableWord
from .linalg import as_sym, default_tol, is_psd, permute_congruent
from .ncpoly import ONE, Polynomial, Word, as_word, rc, star, word_key

MonomialVector = tuple[Word, ...]

POLICIES = ("strict", "even", "first")


def monomial_vector(words: Iterable[Iterable[int]]) -> MonomialVector:
    W = tuple(as_word(w) for w in words)
    if len(set(W)) != len(W):
        raise ValueError("monomial vector entries must be distinct")
    return W


@dataclass(frozen=True, eq=False)
class Representation:
    """A monomial vector together with a symmetric coefficient matrix."""

    monomials: MonomialVector
    matrix: np.ndarray

    def __post_init__(self):
        W = monomial_vector(self.monomials)
        G = as_sym(self.matrix) if len(W) else np.zeros((0, 0))
        if G.shape != (len(W), len(W)):
            raise ValueError(f"matrix shape {G.shape} does not match {len(W)} monomials")
        G.setflags(write=False)
        object.__setattr__(self, "monomials", W)
        object.__setattr__(self, "matrix", G)

    @property
    def order(self) -> int:
        return len(self.monomials)

    @property
    def max_degree(self) -> int:
        return max((len(w) for w in self.monomials), default=0)

    def expand(self) -> Polynomial:
        return expand(self)

    def permuted(self, sigma: Sequence[int]) -> "Representation":
        """Reorder monomials by ``sigma`` and conjugate the matrix accordingly."""
        return type(self)(
            tuple(self.monomials[i] for i in sigma), permute_congruent(self.matrix, sigma)
        )

    def index(self, w: Word) -> int:
        return self.monomials.index(w)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(monomials={list(self.monomials)}, matrix={self.matrix.tolist()})"


class GramLikeMatrix(Representation):
    """Representation whose matrix has a strictly positive diagonal."""

    def __post_init__(self):
        super().__post_init__()
        if np.any(np.diag(self.matrix) <= 0):
            raise ValueError("a Gram-like matrix needs a strictly positive diagonal")


def expand(R: Representation) -> Polynomial:
    """Sum of ``G[i, j] * star(w_i) w_j`` over all cells."""
    W, G = R.monomials, R.matrix
    terms = []
    for i, wi in enumerate(W):
        left = star(wi)
        for j, wj in enumerate(W):
            if G[i, j] != 0.0:
                terms.append((left + wj, G[i, j]))
    return Polynomial(terms)


def is_sohs_certificate(f: Polynomial, R: Representation, tol: float = 1e-9) -> bool:
    return expand(R).almost_equal(f, tol) and is_psd(R.matrix, tol)


def sohs_witness(R: Representation, tol: float | None = None) -> list[Polynomial]:
    """Factor a PSD representation into polynomials ``g`` with ``sum g^* g = W^* G W``.

    Uses ``G = sum lambda v v^t``; each eigenpair with ``lambda > tol``
    gives ``g = sqrt(lambda) v^t W``.
    """
    G = R.matrix
    if tol is None:
        tol = default_tol(G)
    if G.size == 0:
        return []
    if not is_psd(G, tol):
        raise NotPsdError("representation matrix is not positive semidefinite")
    lam, V = np.linalg.eigh(G)
    out = []
    for t in range(len(lam)):
        if lam[t] <= tol:
            continue
        scale = math.sqrt(lam[t])
        out.append(Polynomial((w, scale * V[i, t]) for i, w in enumerate(R.monomials)))
    return out


def sum_of_hermitian_squares(gs: Iterable[Polynomial]) -> Polynomial:
    total = Polynomial()
    for g in gs:
        total = total + g.star() * g
    return total


def _cells(W: MonomialVector) -> dict[Word, list[tuple[int, int]]]:
    """Unordered cells ``(i <= j)`` grouped by the word ``star(w_i) w_j`` they produce."""
    cells: dict[Word, list[tuple[int, int]]] = {}
    for i in range(len(W)):
        for j in range(i, len(W)):
            w = star(W[i]) + W[j]
            cells.setdefault(w, []).append((i, j))
    return cells


def fit_gram(f: Polynomial, W: Iterable, policy: str = "strict") -> Representation:
    """Find a symmetric ``G`` with ``W^* G W = f``.

    Each word orbit ``{w, star(w)}`` of ``f`` is assigned to the cells
    ``{i, j}`` with ``star(W[i]) W[j]`` in the orbit.  ``strict`` demands a
    single cell, ``even`` spreads the coefficient evenly, ``first`` puts it
    all in the deglex-smallest cell.  Unused cells are zero.
    """
    if policy not in POLICIES:
        raise ValueError(f"policy must be one of {POLICIES}")
    if not f.is_symmetric():
        raise ValueError("fit_gram needs a symmetric polynomial")
    W = monomial_vector(W)
    k = len(W)
    G = np.zeros((k, k))
    by_word = _cells(W)
    done: set[Word] = set()
    for w in f.words():
        if w in done:
            continue
        ws = star(w)
        done.update((w, ws))
        cells = sorted(
            set(by_word.get(w, [])) | set(by_word.get(ws, [])),
            key=lambda c: sorted((word_key(W[c[0]]), word_key(W[c[1]]))),
        )
        if not cells:
            raise UnrepresentableWord(w)
        if policy == "strict" and len(cells) > 1:
            raise AmbiguousDistribution(w, len(cells))
        if policy == "first":
            cells = cells[:1]
        c = f.coeff(w)
        share = c / len(cells)
        for i, j in cells:
            # an off-diagonal cell feeds w twice when w is a palindrome
            weight = 2.0 if (i != j and w == ws) else 1.0
            G[i, j] = G[j, i] = share / weight
    return Representation(W, G)


def num_words(d: int, n: int) -> int:
    """Number of words of length at most ``d`` in ``n`` letters."""
    return sum(n**i for i in range(d + 1))


def all_words(d: int, n: int) -> MonomialVector:
    """Every word of length at most ``d`` over ``x1..xn`` in deglex order."""
    out: list[Word] = []
    for length in range(d + 1):
        out.extend(itertools.product(range(1, n + 1), repeat=length))
    return tuple(out)


def gram_matrix(f: Polynomial, policy: str = "first") -> Representation:
    """Representation over all words of length ``<= ceil(deg f / 2)``."""
    d = math.ceil((f.degree or 0) / 2)
    return fit_gram(f, all_words(d, max(f.n_vars, 1)), policy)


def candidate_monomials(f: Polynomial) -> MonomialVector:
    """Right chips and left chips of the words of ``f`` up to half its degree."""
    if f.is_zero():
        return ()
    half = math.ceil(f.degree / 2)
    found: set[Word] = set()
    for w in f.terms:
        for i in range(half + 1):
            for u in (rc(w, i), star(rc(star(w), i))):
                if len(u) <= half:
                    found.add(u)
    return tuple(sorted(found, key=word_key))


__all__ = [
    "MonomialVector",
    "Representation",
    "GramLikeMatrix",
    "ONE",
    "monomial_vector",
    "expand",
    "is_sohs_certificate",
    "sohs_witness",
    "sum_of_hermitian_squares",
    "fit_gram",
    "num_words",
    "all_words",
    "gram_matrix",
    "candidate_monomials",
]

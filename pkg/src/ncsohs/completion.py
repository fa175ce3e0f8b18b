"""Partial symmetric matrices, chordal specification graphs and PSD completion.

A partial matrix stores NaN in unspecified cells.  Its specification graph
has an edge for every specified off-diagonal pair.  When that graph is
chordal, ``psd_complete`` fills one entry at a time along a chordal
supergraph sequence, choosing the determinant-maximising value for each
entry; otherwise it falls back to coordinate ascent on log det.
"""

from __future__ import annotations

import itertools
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import CompletionFailed, NotPartialPsd
from .gram import GramLikeMatrix, MonomialVector, expand, monomial_vector
from .linalg import is_psd, min_eigenvalue, pseudo_inverse
from .ncpoly import Polynomial

FALLBACK_EPS = 1e-6
FALLBACK_TOL = 1e-6
FALLBACK_STEP = 1e-10
FALLBACK_SWEEPS = 20000


class PartialSymMatrix:
    """Symmetric matrix with some off-diagonal entries unspecified.

    ``values`` may contain ``None`` or NaN for unspecified cells.  The
    diagonal must be specified and the specified pattern symmetric with
    equal mirrored values.
    """

    __slots__ = ("_values", "_mask")

    def __init__(self, values):
        rows = [[np.nan if v is None else float(v) for v in row] for row in values]
        A = np.array(rows, dtype=float).reshape(len(rows), -1) if rows else np.zeros((0, 0))
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {A.shape}")
        mask = ~np.isnan(A)
        if not np.all(np.diag(mask)):
            raise ValueError("all diagonal entries must be specified")
        if not np.array_equal(mask, mask.T):
            raise ValueError("specified pattern must be symmetric")
        if not np.array_equal(A[mask], A.T[mask]):
            raise ValueError("mirrored specified entries must be equal")
        A.setflags(write=False)
        mask.setflags(write=False)
        self._values = A
        self._mask = mask

    @classmethod
    def from_mask(cls, M, mask) -> "PartialSymMatrix":
        M = np.asarray(M, dtype=float)
        mask = np.asarray(mask, dtype=bool) | np.eye(len(M), dtype=bool)
        return cls(np.where(mask, M, np.nan))

    @property
    def order(self) -> int:
        return self._values.shape[0]

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def mask(self) -> np.ndarray:
        return self._mask

    def is_specified(self, i: int, j: int) -> bool:
        return bool(self._mask[i, j])

    def unspecified_pairs(self) -> list[tuple[int, int]]:
        k = self.order
        return [(i, j) for i in range(k) for j in range(i + 1, k) if not self._mask[i, j]]

    def is_complete(self) -> bool:
        return bool(self._mask.all())

    def submatrix(self, idx: Sequence[int]) -> np.ndarray:
        idx = list(idx)
        sub = self._values[np.ix_(idx, idx)]
        if np.isnan(sub).any():
            raise ValueError(f"principal submatrix on {idx} is not fully specified")
        return sub

    def filled(self, fill: float = 0.0) -> np.ndarray:
        return np.where(self._mask, self._values, fill)

    def to_lists(self) -> list[list[float | None]]:
        return [[None if np.isnan(v) else float(v) for v in row] for row in self._values]

    def __repr__(self) -> str:
        return f"PartialSymMatrix({self.to_lists()})"


class SpecGraph:
    """Simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "edges", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        self.n = int(n)
        es = set()
        for u, v in edges:
            if u == v:
                raise ValueError("loops are not allowed")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            es.add((min(u, v), max(u, v)))
        self.edges = frozenset(es)
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        self._adj = tuple(frozenset(a) for a in adj)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def with_edge(self, u: int, v: int) -> "SpecGraph":
        return SpecGraph(self.n, set(self.edges) | {(u, v)})

    def complement(self) -> "SpecGraph":
        return SpecGraph(
            self.n,
            [(u, v) for u in range(self.n) for v in range(u + 1, self.n) if not self.has_edge(u, v)],
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, SpecGraph) and (self.n, self.edges) == (other.n, other.edges)

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"SpecGraph({self.n}, {sorted(self.edges)})"


def specification_graph(P: PartialSymMatrix) -> SpecGraph:
    k = P.order
    return SpecGraph(k, [(i, j) for i in range(k) for j in range(i + 1, k) if P.is_specified(i, j)])


class Chordality(NamedTuple):
    chordal: bool
    witness: list[int]
    """A perfect elimination ordering, or an induced cycle of length >= 4."""


def maximum_cardinality_search(G: SpecGraph) -> list[int]:
    """Visit order of MCS; its reverse is a PEO iff ``G`` is chordal."""
    weight = [0] * G.n
    visited = [False] * G.n
    order = []
    for _ in range(G.n):
        v = max((u for u in range(G.n) if not visited[u]), key=lambda u: (weight[u], -u))
        visited[v] = True
        order.append(v)
        for u in G.neighbors(v):
            if not visited[u]:
                weight[u] += 1
    return order


def is_perfect_elimination_ordering(G: SpecGraph, order: Sequence[int]) -> bool:
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [u for u in G.neighbors(v) if pos[u] > pos[v]]
        for a, b in itertools.combinations(later, 2):
            if not G.has_edge(a, b):
                return False
    return True


def _shortest_path(G: SpecGraph, src: int, dst: int, banned: set[int]) -> list[int] | None:
    prev = {src: None}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        if u == dst:
            path = []
            while u is not None:
                path.append(u)
                u = prev[u]
            return path[::-1]
        for w in sorted(G.neighbors(u)):
            if w not in prev and w not in banned:
                prev[w] = u
                queue.append(w)
    return None


def find_chordless_cycle(G: SpecGraph) -> list[int] | None:
    """An induced cycle of length >= 4, or None if the graph is chordal.

    For every vertex ``v`` and non-adjacent neighbours ``a, b`` a shortest
    ``a``-``b`` path avoiding ``v`` and ``v``'s other neighbours closes a
    chordless cycle through ``v``.
    """
    for v in range(G.n):
        nb = sorted(G.neighbors(v))
        for a, b in itertools.combinations(nb, 2):
            if G.has_edge(a, b):
                continue
            banned = {v} | (set(nb) - {a, b})
            path = _shortest_path(G, a, b, banned)
            if path is not None:
                return [v] + path
    return None


def is_chordal(G: SpecGraph) -> Chordality:
    order = maximum_cardinality_search(G)
    peo = order[::-1]
    if is_perfect_elimination_ordering(G, peo):
        return Chordality(True, peo)
    cycle = find_chordless_cycle(G)
    assert cycle is not None and len(cycle) >= 4
    return Chordality(False, cycle)


def maximal_cliques(G: SpecGraph) -> list[tuple[int, ...]]:
    """Bron-Kerbosch with pivoting; cliques returned sorted."""
    out: list[tuple[int, ...]] = []

    def expand_(R: set[int], P: set[int], X: set[int]):
        if not P and not X:
            out.append(tuple(sorted(R)))
            return
        pivot = max(P | X, key=lambda u: len(P & G.neighbors(u)))
        for v in sorted(P - G.neighbors(pivot)):
            nb = G.neighbors(v)
            expand_(R | {v}, P & nb, X & nb)
            P = P - {v}
            X = X | {v}

    if G.n:
        expand_(set(), set(range(G.n)), set())
    return sorted(out)


def is_partial_psd(P: PartialSymMatrix, tol: float = 1e-9) -> bool:
    """Every fully specified principal submatrix is PSD.

    Each such submatrix sits inside a maximal clique of the specification
    graph, so checking the cliques suffices.
    """
    return all(is_psd(P.submatrix(K), tol) for K in maximal_cliques(specification_graph(P)))


def _violated_minor(M: np.ndarray, tol: float) -> tuple[tuple[int, ...], float]:
    k = len(M)
    for size in range(1, k + 1):
        for K in itertools.combinations(range(k), size):
            lam = min_eigenvalue(M[np.ix_(K, K)])
            if lam < -tol:
                return K, lam
    return tuple(range(k)), min_eigenvalue(M)


def propagate_forced(P: PartialSymMatrix, tol: float = 1e-9) -> tuple[np.ndarray, tuple[int, ...] | None]:
    """Fill entries whose PSD value is unique, then look for a violated clique.

    An unspecified ``(i, j)`` is forced when, for some clique ``K`` of common
    neighbours, one of the Schur complements ``a_ii - b^t A^+ b`` or
    ``a_jj - c^t A^+ c`` vanishes: the only PSD value is then ``b^t A^+ c``.
    Returns the filled values and the first fully specified principal
    submatrix (after filling) that is not PSD, if any.
    """
    M = P.filled(np.nan)
    G = specification_graph(P)
    changed = True
    while changed:
        changed = False
        for i, j in [(i, j) for i in range(G.n) for j in range(i + 1, G.n) if not G.has_edge(i, j)]:
            common = sorted(G.neighbors(i) & G.neighbors(j))
            for size in range(1, len(common) + 1):
                hit = None
                for K in itertools.combinations(common, size):
                    if any(not G.has_edge(a, b) for a, b in itertools.combinations(K, 2)):
                        continue
                    K = list(K)
                    Ap = pseudo_inverse(M[np.ix_(K, K)], 1e-12)
                    si = M[i, i] - M[i, K] @ Ap @ M[K, i]
                    sj = M[j, j] - M[j, K] @ Ap @ M[K, j]
                    if min(si, sj) <= tol:
                        hit = float(M[i, K] @ Ap @ M[K, j])
                        break
                if hit is not None:
                    M[i, j] = M[j, i] = hit
                    G = G.with_edge(i, j)
                    changed = True
                    break
    for K in maximal_cliques(G):
        if not is_psd(M[np.ix_(K, K)], tol):
            sub, _ = _violated_minor(M[np.ix_(K, K)], tol)
            return M, tuple(K[t] for t in sub)
    return M, None


def _fill_value(M: np.ndarray, i: int, j: int, K: Sequence[int]) -> float:
    if not K:
        return 0.0
    K = list(K)
    A = M[np.ix_(K, K)]
    return float(M[i, K] @ pseudo_inverse(A, 1e-12) @ M[K, j])


def _chordal_fill(P: PartialSymMatrix, tol: float):
    """Fill entries while some edge keeps the graph chordal with a clique common neighbourhood.

    Returns the (possibly partially) filled values and the remaining graph.
    """
    M = P.filled(np.nan)
    G = specification_graph(P)
    while True:
        missing = [(i, j) for i in range(G.n) for j in range(i + 1, G.n) if not G.has_edge(i, j)]
        if not missing:
            return M, G
        for i, j in missing:
            K = sorted(G.neighbors(i) & G.neighbors(j))
            if any(not G.has_edge(a, b) for a, b in itertools.combinations(K, 2)):
                continue
            H = G.with_edge(i, j)
            if not is_chordal(H).chordal:
                continue
            x = _fill_value(M, i, j, K)
            M[i, j] = M[j, i] = x
            idx = [i] + K + [j]
            if not is_psd(M[np.ix_(idx, idx)], tol):
                lam = min_eigenvalue(M[np.ix_(idx, idx)])
                raise CompletionFailed(
                    f"filled submatrix on {idx} is not PSD", tuple(sorted(idx)), lam
                )
            G = H
            break
        else:
            return M, G


def maxdet_completion(
    P: PartialSymMatrix,
    start: np.ndarray | None = None,
    eps: float = FALLBACK_EPS,
    step_tol: float = FALLBACK_STEP,
    max_sweeps: int = FALLBACK_SWEEPS,
) -> np.ndarray:
    """Coordinate ascent on log det of ``M + eps I`` over the free entries.

    Each free entry is set to ``b^t A^{-1} c``, the value that zeroes the
    matching entry of the inverse with all other entries held fixed.
    """
    k = P.order
    M = P.filled(0.0) if start is None else np.where(np.isnan(start), 0.0, start)
    M = M + eps * np.eye(k)
    free = P.unspecified_pairs() if start is None else [
        (i, j) for i, j in P.unspecified_pairs() if np.isnan(start[i, j])
    ]
    rest = {(i, j): [r for r in range(k) if r not in (i, j)] for i, j in free}
    for _ in range(max_sweeps):
        moved = 0.0
        for i, j in free:
            R = rest[i, j]
            A = M[np.ix_(R, R)]
            x = float(M[i, R] @ pseudo_inverse(A, 1e-14) @ M[R, j]) if R else 0.0
            moved = max(moved, abs(x - M[i, j]))
            M[i, j] = M[j, i] = x
        if moved <= step_tol:
            break
    return M - eps * np.eye(k)


def psd_complete(P: PartialSymMatrix, tol: float = 1e-8) -> np.ndarray:
    """A PSD matrix agreeing with every specified entry of ``P``.

    Entries whose PSD value is unique are filled first.  The rest are filled
    one at a time along chordal supergraphs while possible, and by the
    regularised max-det ascent otherwise.  Raises NotPartialPsd if some specified principal submatrix is not PSD,
    and CompletionFailed (carrying a violated principal minor) when no
    completion is found.
    """
    if not is_partial_psd(P, tol):
        raise NotPartialPsd("some fully specified principal submatrix is not PSD")
    forced, K = propagate_forced(P)
    if K is not None and not is_psd(forced[np.ix_(K, K)], FALLBACK_TOL):
        lam = min_eigenvalue(forced[np.ix_(K, K)])
        raise CompletionFailed(
            f"no PSD completion: after filling forced entries the principal submatrix "
            f"on {list(K)} has eigenvalue {lam:.3g}",
            K,
            lam,
        )
    start = PartialSymMatrix(forced) if K is None else P
    M, G = _chordal_fill(start, tol)
    if np.isnan(M).any():
        M = maxdet_completion(P, start=M)
        tol = max(tol, FALLBACK_TOL)
    M = np.where(P.mask, P.values, M)
    M = 0.5 * (M + M.T)
    if not is_psd(M, tol):
        K, lam = _violated_minor(M, tol)
        raise CompletionFailed(
            f"no PSD completion found; candidate principal submatrix on {list(K)} "
            f"has eigenvalue {lam:.3g}",
            K,
            lam,
        )
    return M


@dataclass(frozen=True, eq=False)
class PartialRepresentation:
    """Monomial vector with a partially specified Gram-like matrix."""

    monomials: MonomialVector
    pmatrix: PartialSymMatrix

    def __post_init__(self):
        W = monomial_vector(self.monomials)
        if self.pmatrix.order != len(W):
            raise ValueError("matrix order does not match the monomial count")
        if np.any(np.diag(self.pmatrix.values) <= 0):
            raise ValueError("diagonal entries must be strictly positive")
        object.__setattr__(self, "monomials", W)


def is_quasi_sohs(P: PartialRepresentation, tol: float = 1e-9) -> bool:
    return is_partial_psd(P.pmatrix, tol)


def sohs_complete(P: PartialRepresentation, tol: float = 1e-8) -> tuple[Polynomial, GramLikeMatrix]:
    """Complete the Gram-like matrix and expand the resulting SOHS polynomial."""
    if not is_quasi_sohs(P, tol):
        raise NotPartialPsd("polynomial is not quasi SOHS for this representation")
    M = psd_complete(P.pmatrix, tol)
    R = GramLikeMatrix(P.monomials, M)
    return expand(R), R

"""Betti tables and Castelnuovo-Mumford regularity of square-free quadratic monomial ideals.

The ideal of a partial matrix has one generator ``x_i x_j`` per
unspecified pair.  Its Stanley-Reisner complex is the clique complex of
the specification graph, and Hochster's formula

    beta_{i,j}(I) = sum_{|W| = j} dim H~_{j-i-2}(Delta_W; Q)

gives the graded Betti numbers of ``I`` from reduced homology of induced
subcomplexes, computed here with exact integer elimination.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable
from dataclasses import dataclass, field

from .completion import PartialSymMatrix, SpecGraph, is_chordal, maximal_cliques, specification_graph
from .errors import AmbientTooLarge

MAX_VARS = 16


@dataclass(frozen=True)
class MonomialIdeal:
    """Ideal generated by ``x_p x_q`` for pairs ``{p, q}`` in ``generators`` (0-based)."""

    n: int
    generators: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        gens = set()
        for p, q in self.generators:
            if p == q:
                raise ValueError("generators must be square-free")
            if not (0 <= p < self.n and 0 <= q < self.n):
                raise ValueError(f"generator x{p}x{q} outside x0..x{self.n - 1}")
            gens.add((min(p, q), max(p, q)))
        object.__setattr__(self, "generators", frozenset(gens))

    def __str__(self) -> str:
        gens = ", ".join(f"x{p}*x{q}" for p, q in sorted(self.generators))
        return f"<{gens}>"


def subspace_arrangement_ideal(P: PartialSymMatrix) -> MonomialIdeal:
    return MonomialIdeal(P.order, frozenset(P.unspecified_pairs()))


def ideal_of_graph(G: SpecGraph) -> MonomialIdeal:
    """Generators are the non-edges of ``G``."""
    return MonomialIdeal(G.n, G.complement().edges)


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: tuple[int, ...]
    facets: tuple[tuple[int, ...], ...]

    def faces(self) -> set[tuple[int, ...]]:
        """All faces, including the empty face."""
        out = {()}
        for F in self.facets:
            for r in range(1, len(F) + 1):
                out.update(itertools.combinations(F, r))
        return out

    @property
    def dimension(self) -> int:
        return max((len(F) for F in self.facets), default=0) - 1


def stanley_reisner_complex(I: MonomialIdeal) -> SimplicialComplex:
    """Faces are the vertex sets containing no generator pair."""
    G = SpecGraph(I.n, I.generators).complement()
    return SimplicialComplex(tuple(range(I.n)), tuple(maximal_cliques(G)))


def integer_rank(rows: list[list[int]]) -> int:
    """Rank over Q of an integer matrix by fraction-free elimination."""
    M = [list(r) for r in rows if any(r)]
    if not M:
        return 0
    ncols = len(M[0])
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(M)) if M[r][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank][c]
        for r in range(rank + 1, len(M)):
            q = M[r][c]
            if q:
                row = [p * x - q * y for x, y in zip(M[r], M[rank])]
                g = math.gcd(*row)
                M[r] = [x // g for x in row] if g > 1 else row
        rank += 1
        if rank == len(M):
            break
    return rank


def _faces_by_dim(vertices: Iterable[int], nonedges: set[tuple[int, int]]) -> list[list[tuple[int, ...]]]:
    """Faces of the flag complex on ``vertices`` avoiding ``nonedges``, grouped by size."""
    vs = sorted(vertices)
    levels = [[()]]
    current = [()]
    while current:
        nxt = []
        for F in current:
            start = vs.index(F[-1]) + 1 if F else 0
            for v in vs[start:]:
                if all((u, v) not in nonedges for u in F):
                    nxt.append(F + (v,))
        if nxt:
            levels.append(nxt)
        current = nxt
    return levels


def _boundary_ranks(levels: list[list[tuple[int, ...]]]) -> list[int]:
    """``ranks[s]`` is the rank of the boundary map from size-``s`` faces to size-``s-1`` faces."""
    ranks = [0] * (len(levels) + 1)
    for s in range(1, len(levels)):
        lower = {F: i for i, F in enumerate(levels[s - 1])}
        rows = []
        for F in levels[s]:
            row = [0] * len(lower)
            for t in range(len(F)):
                row[lower[F[:t] + F[t + 1:]]] = -1 if t % 2 else 1
            rows.append(row)
        ranks[s] = integer_rank(rows)
    return ranks


def reduced_homology(vertices: Iterable[int], nonedges: set[tuple[int, int]]) -> dict[int, int]:
    """``{k: dim H~_k}`` of the flag complex, nonzero entries only."""
    levels = _faces_by_dim(vertices, nonedges)
    ranks = _boundary_ranks(levels)
    out = {}
    for s in range(len(levels)):
        dim = len(levels[s]) - ranks[s] - ranks[s + 1]
        if dim:
            out[s - 1] = dim
    return out


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers ``beta[i, j]`` of the ideal (nonzero entries only)."""

    betti: dict[tuple[int, int], int] = field(default_factory=dict)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.betti.get(key, 0)

    @property
    def length(self) -> int:
        return max((i for i, _ in self.betti), default=-1) + 1

    def totals(self) -> list[int]:
        t = [0] * self.length
        for (i, _), b in self.betti.items():
            t[i] += b
        return t

    def row_labels(self) -> list[int]:
        return sorted({j - i for i, j in self.betti})

    def row(self, r: int) -> list[int]:
        return [self[i, i + r] for i in range(self.length)]

    def regularity(self) -> int:
        return max((j - i for i, j in self.betti), default=0)

    def format(self) -> str:
        """Text grid in the style of Macaulay2, zeros shown as ``.``."""
        cols = list(range(self.length))
        cells = [[str(c) for c in cols], [str(t) for t in self.totals()]]
        labels = ["", "total:"]
        for r in self.row_labels():
            cells.append([str(b) if b else "." for b in self.row(r)])
            labels.append(f"{r}:")
        width = max((len(s) for row in cells for s in row), default=1)
        lw = max(len(s) for s in labels)
        lines = []
        for lab, row in zip(labels, cells):
            lines.append(lab.rjust(lw) + " " + " ".join(s.rjust(width) for s in row))
        return "\n".join(line.rstrip() for line in lines)

    def to_json(self) -> dict:
        return {
            "totals": self.totals(),
            "rows": {str(r): self.row(r) for r in self.row_labels()},
            "entries": [[i, j, b] for (i, j), b in sorted(self.betti.items())],
        }


def betti_table(I: MonomialIdeal) -> BettiTable:
    """Hochster's formula summed over all vertex subsets."""
    if I.n > MAX_VARS:
        raise AmbientTooLarge(f"{I.n} variables exceeds the limit of {MAX_VARS}")
    betti: dict[tuple[int, int], int] = {}
    gens = set(I.generators)
    for size in range(2, I.n + 1):
        for W in itertools.combinations(range(I.n), size):
            sub = {e for e in gens if e[0] in W and e[1] in W}
            if not sub:
                continue
            for k, dim in reduced_homology(W, sub).items():
                i = size - k - 2
                if i >= 0:
                    betti[i, size] = betti.get((i, size), 0) + dim
    return BettiTable(betti)


def regularity(I: MonomialIdeal) -> int:
    """``max(j - i)`` over nonzero Betti numbers; 0 for the zero ideal."""
    return betti_table(I).regularity()


def is_2_regular(P: PartialSymMatrix, method: str = "chordal") -> bool:
    """2-regularity of the subspace arrangement of ``P``.

    ``method="chordal"`` tests the specification graph; ``"betti"`` computes
    the Betti table.  The two agree.
    """
    if method == "chordal":
        return is_chordal(specification_graph(P)).chordal
    if method == "betti":
        return regularity(subspace_arrangement_ideal(P)) <= 2
    raise ValueError("method must be 'chordal' or 'betti'")

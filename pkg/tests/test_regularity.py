import itertools
import time

import numpy as np
import pytest
from numpy.polynomial import polynomial as npoly

from ncsohs import (
    AmbientTooLarge,
    MonomialIdeal,
    PartialSymMatrix,
    SpecGraph,
    betti_table,
    is_2_regular,
    is_chordal,
    regularity,
    stanley_reisner_complex,
    subspace_arrangement_ideal,
)
from ncsohs.regularity import (
    _boundary_ranks,
    _faces_by_dim,
    ideal_of_graph,
    integer_rank,
    reduced_homology,
)

from conftest import random_graph_edges

N = None
CHORDAL4 = [[5, 5, 5, N], [5, 5, 5, N], [5, 5, 5, 5], [N, N, 5, 5]]
C4 = [[5, 5, N, 2.2], [5, 5, 5, N], [N, 5, 5, 5], [2.2, N, 5, 5]]
DISC5 = ideal_of_graph(SpecGraph(5, [(0, 1), (2, 3)]))


def test_ideal_of_partial_matrix():
    assert subspace_arrangement_ideal(PartialSymMatrix(CHORDAL4)).generators == {(0, 3), (1, 3)}
    assert subspace_arrangement_ideal(PartialSymMatrix(C4)).generators == {(0, 2), (1, 3)}
    assert subspace_arrangement_ideal(PartialSymMatrix(np.eye(3) + 1)).generators == frozenset()
    assert len(DISC5.generators) == 8


def test_ideal_validation():
    with pytest.raises(ValueError):
        MonomialIdeal(3, frozenset({(1, 1)}))
    with pytest.raises(ValueError):
        MonomialIdeal(3, frozenset({(0, 3)}))
    assert MonomialIdeal(3, frozenset({(2, 0)})).generators == {(0, 2)}


def test_stanley_reisner_complex():
    assert stanley_reisner_complex(MonomialIdeal(2, frozenset({(0, 1)}))).faces() == {(), (0,), (1,)}
    full = stanley_reisner_complex(MonomialIdeal(3))
    assert full.facets == ((0, 1, 2),) and len(full.faces()) == 8
    sq = stanley_reisner_complex(MonomialIdeal(4, frozenset({(0, 2), (1, 3)})))
    assert {len(F) for F in sq.faces()} == {0, 1, 2}
    assert sorted(sq.facets) == [(0, 1), (0, 3), (1, 2), (2, 3)]


def test_betti_tables_match_printed_tables():
    B = betti_table(MonomialIdeal(4, frozenset({(0, 3), (1, 3)})))
    assert B.totals() == [2, 1] and B.row(2) == [2, 1] and B.regularity() == 2
    assert B.format() == "       0 1\ntotal: 2 1\n    2: 2 1"
    J = betti_table(MonomialIdeal(4, frozenset({(0, 2), (1, 3)})))
    assert J.totals() == [2, 1] and J.row(2) == [2, 0] and J.row(3) == [0, 1]
    assert J[1, 4] == 1 and J.regularity() == 3
    assert J.format() == "       0 1\ntotal: 2 1\n    2: 2 .\n    3: . 1"
    D = betti_table(DISC5)
    assert D.totals() == [8, 14, 9, 2] and D.row_labels() == [2] and D.regularity() == 2


def test_zero_ideal():
    assert regularity(MonomialIdeal(3)) == 0
    assert betti_table(MonomialIdeal(3)).totals() == []


def test_ambient_guard():
    with pytest.raises(AmbientTooLarge):
        betti_table(MonomialIdeal(17))


def test_two_regular_both_methods():
    for rows, expected in ((CHORDAL4, True), (C4, False), (np.ones((4, 4)), True)):
        P = PartialSymMatrix(rows)
        assert is_2_regular(P) is expected
        assert is_2_regular(P, method="betti") is expected
    with pytest.raises(ValueError):
        is_2_regular(PartialSymMatrix(C4), method="other")


def test_integer_rank_matches_numpy(rng):
    for _ in range(200):
        r, c = rng.integers(1, 7, size=2)
        M = rng.integers(-2, 3, size=(r, c))
        if rng.random() < 0.3:
            M[-1] = M[0] * 2 - (M[1] if r > 1 else 0)
        assert integer_rank(M.tolist()) == np.linalg.matrix_rank(M)


def test_generator_count_is_first_betti(rng):
    for _ in range(50):
        n = int(rng.integers(2, 7))
        gens = random_graph_edges(n, 0.5, rng)
        I = MonomialIdeal(n, frozenset(gens))
        assert betti_table(I)[0, 2] == len(gens)


def test_euler_characteristic_of_induced_subcomplexes(rng):
    for _ in range(60):
        n = int(rng.integers(1, 7))
        nonedges = random_graph_edges(n, 0.5, rng)
        levels = _faces_by_dim(range(n), nonedges)
        ranks = _boundary_ranks(levels)
        chi = sum((-1) ** (s - 1) * len(levels[s]) for s in range(len(levels)))
        h = reduced_homology(range(n), nonedges)
        assert chi == sum((-1) ** k * d for k, d in h.items())
        assert all(r >= 0 for r in ranks)


def test_k_polynomial_identity(rng):
    """Alternating Betti sum equals the numerator of the Hilbert series of S/I."""
    for _ in range(60):
        n = int(rng.integers(2, 7))
        I = MonomialIdeal(n, frozenset(random_graph_edges(n, 0.5, rng)))
        B = betti_table(I)
        lhs = np.zeros(n + 2)
        lhs[0] = 1
        for (i, j), b in B.betti.items():
            lhs[j] -= (-1) ** i * b
        rhs = np.zeros(n + 2)
        for F in stanley_reisner_complex(I).faces():
            term = npoly.polymul([0] * len(F) + [1], npoly.polypow([1, -1], n - len(F)))
            rhs[: len(term)] += term
        assert np.allclose(lhs, rhs)


def test_froberg_equivalence(rng):
    for _ in range(200):
        n = int(rng.integers(1, 8))
        G = SpecGraph(n, random_graph_edges(n, rng.uniform(0.2, 0.9), rng))
        assert is_chordal(G).chordal == (regularity(ideal_of_graph(G)) <= 2)


def test_betti_runtime():
    for I in (MonomialIdeal(4, frozenset({(0, 3), (1, 3)})), MonomialIdeal(4, frozenset({(0, 2), (1, 3)})), DISC5):
        t = time.perf_counter()
        betti_table(I)
        assert time.perf_counter() - t < 1.0


def test_betti_json():
    data = betti_table(MonomialIdeal(4, frozenset({(0, 2), (1, 3)}))).to_json()
    assert data == {"totals": [2, 1], "rows": {"2": [2, 0], "3": [0, 1]}, "entries": [[0, 2, 2], [1, 4, 1]]}

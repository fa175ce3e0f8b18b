import itertools

import numpy as np
import pytest

from ncsohs import (
    ColumnSpaceViolation,
    ExtensionProblem,
    GramLikeMatrix,
    HypothesisViolated,
    NotApplicable,
    Polynomial,
    Representation,
    block_extension,
    build_partial_extension,
    check_block_decomposable,
    check_rc_conditions,
    complete_diagonal,
    diagonal_extension,
    expand,
    is_psd,
    parse,
    rc_decompositions,
    verify_gmpe,
)
from ncsohs.extension import PartialBlockMatrix, gmpe_violations


def problem(f, h, W, G):
    return ExtensionProblem.from_polynomials(parse(f), parse(h), Representation(W, G))


def test_rc_obstruction_single_variable():
    p = problem("x1^2 + x1 + 5", "x1^2 + 5", ((), (1,)), [[5, 0], [0, 1]])
    d = check_rc_conditions(p)
    assert not d and d.obstructed == ((1,),)
    with pytest.raises(NotApplicable):
        build_partial_extension(p)


def test_rc_split_for_unit_plus_square():
    p = problem("x1^2 + 1 + x1 x2", "x1^2 + 1", ((), (1,)), np.eye(2))
    d = check_rc_conditions(p)
    assert d.ok
    (ch,) = d.choices
    assert (ch.left, ch.right) == ((1,), (2,))
    P = build_partial_extension(p, d)
    assert P.monomials == ((), (1,), (2,))
    assert P.a.ravel().tolist() == [0.0, 1.0]
    assert P.to_lists() == [[1, 0, 0], [0, 1, 1], [0, 1, None]]


def test_empty_deltas():
    p = problem("x1^2", "x1^2", ((1,),), [[1]])
    assert check_rc_conditions(p).ok
    P = build_partial_extension(p)
    assert P.m == 0 and P.a.shape == (1, 0)
    assert complete_diagonal(P).tolist() == [[1.0]]


def test_longer_delta_takes_a_fresh_split():
    p = problem("x1^2 + 2 x1 x2 x3", "x1^2", ((1,),), [[1]])
    d = check_rc_conditions(p)
    (ch,) = d.choices
    assert ch.left not in p.zetas or ch.right not in p.zetas
    assert ch.left[::-1] + ch.right == (1, 2, 3)
    P = build_partial_extension(p, d)
    M = complete_diagonal(P)
    R = GramLikeMatrix(P.monomials, M)
    assert verify_gmpe(expand(R), p.f, p.h, p.rep_h, R)


def test_hermitian_square_delta_rejected():
    p = problem("x1^2 + 3 x2^2", "x1^2", ((1,),), [[1]])
    with pytest.raises(NotApplicable):
        build_partial_extension(p)


def test_column_space_guard():
    p = problem("x1^2+x2^2+x1 x2+x2 x1+2x1-2x2", "x1^2+x2^2+x1 x2+x2 x1", ((1,), (2,)), [[1, 1], [1, 1]])
    P = build_partial_extension(p)
    assert P.a.ravel().tolist() == [1.0, -1.0]
    with pytest.raises(ColumnSpaceViolation):
        complete_diagonal(P)


@pytest.mark.parametrize("d", [0, 1, 10])
def test_column_space_violation_blocks_any_diagonal(d):
    M = np.array([[1, 1, 1], [1, 1, -1], [1, -1, d]], float)
    assert np.isclose(np.linalg.det(M), -4)
    assert not is_psd(M)


def test_diagonal_recipe_examples():
    P = PartialBlockMatrix(((1,), (2,), (3,)), np.eye(2), np.array([[1.0], [1.0]]), np.array([[np.nan]]))
    M = complete_diagonal(P)
    assert M[2, 2] == 3.0 and is_psd(M)
    P0 = PartialBlockMatrix(((1,), (2,), (3,)), np.eye(2), np.zeros((2, 1)), np.array([[np.nan]]))
    assert complete_diagonal(P0, margin=0.5)[2, 2] == 0.5
    with pytest.raises(ValueError):
        complete_diagonal(P0, margin=0)


def random_block(rng):
    k = int(rng.integers(1, 5))
    m = int(rng.integers(1, 7 - k))
    r = int(rng.integers(0, k + 1))
    F = rng.normal(size=(k, r))
    gh = F @ F.T
    a = gh @ rng.normal(size=(k, m))
    b = rng.normal(size=(m, m))
    b = b + b.T
    np.fill_diagonal(b, np.nan)
    W = tuple((i + 1,) for i in range(k + m))
    return PartialBlockMatrix(W, gh, a, b)


def test_diagonal_completion_random(rng):
    for _ in range(200):
        P = random_block(rng)
        M = complete_diagonal(P)
        assert is_psd(M, 1e-8)
        assert np.allclose(M[: P.k, : P.k], P.gh) and np.allclose(M[: P.k, P.k :], P.a)
        off = ~np.eye(P.m, dtype=bool)
        assert np.allclose(M[P.k :, P.k :][off], P.b[off])


def test_diagonal_margin_monotone(rng):
    for _ in range(30):
        P = random_block(rng)
        for margin in (0.01, 1.0, 100.0):
            assert is_psd(complete_diagonal(P, margin), 1e-8)


def test_diagonal_extension_end_to_end():
    p = problem("x1^2 + 1 + x1 x2", "x1^2 + 1", ((), (1,)), np.eye(2))
    f_ext, R = diagonal_extension(p)
    assert verify_gmpe(f_ext, p.f, p.h, p.rep_h, R)


def test_block_extension_example():
    f, h = parse("x1^2 + x1 x2"), parse("x1^2")
    f_ext, R = block_extension(f, h, Representation(((1,),), [[1]]))
    assert R.monomials == ((1,), (), (1, 2))
    assert R.matrix.tolist() == [[1, 0, 0], [0, 2, 1], [0, 1, 1]]
    assert f_ext == parse("x1^2 + x1 x2 + x2 x1 + x2 x1^2 x2 + 2")
    assert verify_gmpe(f_ext, f, h, Representation(((1,),), [[1]]), R)
    assert len((f_ext - f).terms) <= 3


def test_block_extension_corner_values():
    f, h = parse("x1^2 + x1 x2"), parse("x1^2")
    rep_h = Representation(((1,),), [[1]])
    for corner in (1.0, 2.0, 7.5, 1e3):
        f_ext, R = block_extension(f, h, rep_h, corner=corner)
        assert verify_gmpe(f_ext, f, h, rep_h, R)
    with pytest.raises(ValueError):
        block_extension(f, h, rep_h, corner=0.5)


def test_block_extension_without_deltas():
    f = parse("x1^2")
    f_ext, R = block_extension(f, f, Representation(((1,),), [[1]]))
    assert f_ext == parse("x1^2 + 1")
    assert R.matrix.tolist() == [[1, 0], [0, 1]]


def test_block_extension_palindromic_delta():
    f, h = parse("x1^2 + 2 x1 x2 x1"), parse("x1^2")
    rep_h = Representation(((1,),), [[1]])
    f_ext, R = block_extension(f, h, rep_h)
    assert R.matrix[1, 2] == 1.0 and R.matrix[1, 1] == 2.0
    assert f_ext == f + parse("x1 x2 x1^2 x2 x1 + 2")
    assert verify_gmpe(f_ext, f, h, rep_h, R)


def test_block_extension_random_r_terms(rng):
    for _ in range(40):
        r = int(rng.integers(1, 4))
        words = set()
        while len(words) < r:
            w = tuple(int(x) for x in rng.integers(2, 4, size=rng.integers(2, 4)))
            if w[::-1] not in words:
                words.add(w)
        h = parse("x1^2")
        rest = Polynomial({w: float(rng.integers(1, 5)) for w in words})
        rep_h = Representation(((1,),), [[1]])
        try:
            f_ext, R = block_extension(h + rest, h, rep_h)
        except HypothesisViolated:
            continue
        assert verify_gmpe(f_ext, h + rest, h, rep_h, R)
        assert len((f_ext - h - rest).prune(1e-12).terms) <= 2 * r + 1


@pytest.mark.parametrize(
    "f, h, W, G, clause",
    [
        ("x1^2 + x1 x2 + 1", "x1^2", ((1,),), [[1]], "constant"),
        ("x1^2 + x1", "x1^2", ((1,),), [[1]], "right chip"),
        ("x1^2 + x2 x1", "x1^2", ((1,),), [[2]], "expand"),
        ("x1^2 + x2 x3 + x3 x2", "x1^2", ((1,),), [[1]], "mirror"),
    ],
)
def test_block_extension_hypotheses(f, h, W, G, clause):
    with pytest.raises(HypothesisViolated, match=clause):
        block_extension(parse(f), parse(h), Representation(W, G))


def test_gmpe_verification_three_by_three():
    f = parse("x1^2 + 1 + x1 x2")
    f_ext = f + parse("x2 x1 + x2^2")
    R = Representation(((), (1,), (2,)), [[1, 0, 0], [0, 1, 1], [0, 1, 1]])
    rep_h = Representation(((), (1,)), np.eye(2))
    assert verify_gmpe(f_ext, f, parse("x1^2 + 1"), rep_h, R)
    assert not verify_gmpe(f, f, parse("x1^2 + 1"), rep_h, R)


def test_sohs_extension_that_is_not_gmpe():
    f = parse("x1^2 + x1 + 5")
    h = parse("x1^2 + 5")
    f_ext = f + parse("x1^4")
    rep_h = Representation(((), (1,)), [[5, 0], [0, 1]])
    for g02 in np.linspace(-0.4, 0.4, 9):
        # every Gram-like matrix of f_ext over (1, x1, x1^2) has the cell (1, x1) equal to 1/2
        G = [[5, 0.5, g02], [0.5, 1 - 2 * g02, 0], [g02, 0, 1]]
        R = Representation(((), (1,), (1, 1)), G)
        assert expand(R).almost_equal(f_ext)
        assert not verify_gmpe(f_ext, f, h, rep_h, R)
        assert any("principal submatrix" in v for v in gmpe_violations(f_ext, f, h, rep_h, R))


def test_block_decomposable():
    rep_h = Representation(((), (1,)), np.eye(2))
    assert check_block_decomposable(rep_h, Representation(((2,),), [[1]]))
    assert not check_block_decomposable(rep_h, Representation(((1,),), [[1]]))


def test_three_by_three_extension_has_no_block_form():
    f = parse("x1^2 + 1 + x1 x2")
    W = ((), (1,), (2,))
    G = np.array([[1, 0, 0], [0, 1, 1], [0, 1, 1]], float)
    for r in range(1, 3):
        for S in itertools.combinations(range(3), r):
            T = [i for i in range(3) if i not in S]
            rep_a = Representation(tuple(W[i] for i in S), G[np.ix_(S, S)])
            rep_b = Representation(tuple(W[i] for i in T), G[np.ix_(T, T)])
            assert not check_block_decomposable(rep_a, rep_b, f, h=parse("x1^2 + 1"))
    # x1 x2 can only come from a cell touching 1 or x1, both already in W_h
    for left, right in rc_decompositions((1, 2)):
        assert left in ((), (1,)) or right in ((), (1,))
    rep_h = Representation(((), (1,)), np.eye(2))
    for g in (0.5, 1.0, 3.0):
        assert not check_block_decomposable(rep_h, Representation(((2,),), [[g]]), f)


def test_problem_validation():
    with pytest.raises(ValueError):
        problem("x1^2 + x1 x2", "x1^2", ((1,),), [[2]])
    with pytest.raises(ValueError):
        ExtensionProblem(parse("x1^2 + x1 x2"), parse("x1^2"), Representation(((1,),), [[1]]), ((1.0, (2, 1)),))

"""SOHS extensions that keep a given Gram-like matrix of the SOHS part intact.

Given ``f = h + sum d_j delta_j`` with ``h`` certified by a PSD Gram-like
matrix ``G_h`` over ``W_h``, an extension ``f~`` adds only new words to
``f`` and has a PSD Gram-like matrix containing ``G_h`` as a principal
submatrix.  Two constructions are offered:

* ``block_extension``: appends ``1`` and the words of ``f - h`` to ``W_h``
  and uses an arrow-shaped lower block.
* ``build_partial_extension`` + ``complete_diagonal``: places each
  ``d_j`` at a cell given by a right-chip split of ``delta_j`` and fills the
  new diagonal so the Schur complement is diagonally dominant.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ColumnSpaceViolation, HypothesisViolated, NotApplicable
from .gram import GramLikeMatrix, MonomialVector, Representation, expand
from .linalg import column_space_contains, is_psd, pseudo_inverse
from .ncpoly import ONE, Polynomial, Word, is_hermitian_square, rc, rc_decompositions, star, word_key

DEFAULT_MARGIN = 1.0


def _as_gram_like(R: Representation) -> GramLikeMatrix:
    if isinstance(R, GramLikeMatrix):
        return R
    return GramLikeMatrix(R.monomials, R.matrix)


@dataclass(frozen=True, eq=False)
class ExtensionProblem:
    f: Polynomial
    h: Polynomial
    rep_h: GramLikeMatrix
    deltas: tuple[tuple[float, Word], ...]
    tol: float = 1e-9

    def __post_init__(self):
        rep_h = _as_gram_like(self.rep_h)
        object.__setattr__(self, "rep_h", rep_h)
        if not expand(rep_h).almost_equal(self.h, self.tol):
            raise ValueError("rep_h does not expand to h")
        if not is_psd(rep_h.matrix, self.tol):
            raise ValueError("rep_h must be positive semidefinite")
        words = [w for _, w in self.deltas]
        if len(set(words)) != len(words):
            raise ValueError("delta words must be distinct")
        if any(c == 0 for c, _ in self.deltas):
            raise ValueError("delta coefficients must be nonzero")
        rest = Polynomial([(w, c) for c, w in self.deltas])
        if not (self.f - self.h).almost_equal(rest, self.tol):
            raise ValueError("f - h does not equal the sum of the deltas")

    @classmethod
    def from_polynomials(cls, f: Polynomial, h: Polynomial, rep_h: Representation, tol: float = 1e-9):
        rest = (f - h).prune(tol)
        return cls(f, h, rep_h, tuple((c, w) for w, c in rest.items()), tol)

    @property
    def zetas(self) -> MonomialVector:
        return self.rep_h.monomials


@dataclass(frozen=True)
class RcChoice:
    word: Word
    coefficient: float
    left: Word
    right: Word


@dataclass(frozen=True)
class RcDecision:
    ok: bool
    choices: tuple[RcChoice, ...] = ()
    obstructed: tuple[Word, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def check_rc_conditions(p: ExtensionProblem) -> RcDecision:
    """Pick, for every delta, a split ``star(left) right`` avoiding ``W_h`` on one side.

    A split is admissible when ``left`` and ``right`` are not both monomials
    of ``rep_h``.  Among admissible splits the one adding the fewest new
    monomials is taken, then the lowest new degree, then deglex on
    ``right``.  A delta whose mirror was already placed reuses the mirrored
    split.
    """
    zeta = set(p.zetas)
    used = set(zeta)
    chosen: dict[Word, RcChoice] = {}
    obstructed = []
    for c, w in sorted(p.deltas, key=lambda t: word_key(t[1])):
        mirror = chosen.get(star(w))
        if mirror is not None:
            chosen[w] = RcChoice(w, c, mirror.right, mirror.left)
            continue
        best = None
        for left, right in rc_decompositions(w):
            if left in zeta and right in zeta:
                continue
            new = {left, right} - used
            score = (len(new), max((len(u) for u in new), default=0), word_key(right))
            if best is None or score < best[0]:
                best = (score, left, right)
        if best is None:
            obstructed.append(w)
            continue
        _, left, right = best
        used.update((left, right))
        chosen[w] = RcChoice(w, c, left, right)
    if obstructed:
        return RcDecision(False, (), tuple(obstructed))
    order = {w: k for k, (_, w) in enumerate(p.deltas)}
    return RcDecision(True, tuple(sorted(chosen.values(), key=lambda ch: order[ch.word])))


@dataclass(frozen=True, eq=False)
class PartialBlockMatrix:
    """``[[G_h, A], [A^t, B]]`` with only the diagonal of ``B`` unspecified (NaN)."""

    monomials: MonomialVector
    gh: np.ndarray
    a: np.ndarray
    b: np.ndarray = field(repr=False)

    @property
    def k(self) -> int:
        return self.gh.shape[0]

    @property
    def m(self) -> int:
        return self.b.shape[0]

    def assemble(self, diagonal) -> np.ndarray:
        B = self.b.copy()
        np.fill_diagonal(B, diagonal)
        return np.block([[self.gh, self.a], [self.a.T, B]])

    def to_lists(self) -> list[list[float | None]]:
        M = self.assemble(np.full(self.m, np.nan))
        return [[None if np.isnan(v) else float(v) for v in row] for row in M]


def build_partial_extension(p: ExtensionProblem, decision: RcDecision | None = None) -> PartialBlockMatrix:
    """Lay out the coefficients of ``f - h`` outside the ``G_h`` block.

    The monomial vector is ``W_h`` followed by the new left/right parts of
    the chosen splits.  A coefficient ``d`` at cell ``(left, right)`` is
    written to both mirrored entries (halved for palindromic words, which
    the cell produces twice).  A word and its mirror must carry the same
    coefficient and share one cell.
    """
    if decision is None:
        decision = check_rc_conditions(p)
    if not decision.ok:
        raise NotApplicable(f"no admissible right-chip split for {list(decision.obstructed)}")
    for _, w in p.deltas:
        if is_hermitian_square(w):
            raise NotApplicable(f"{w} is a Hermitian square")
    W = list(p.zetas)
    for ch in decision.choices:
        for u in (ch.left, ch.right):
            if u not in W:
                W.append(u)
    k, l = len(p.zetas), len(W)
    G = np.zeros((l, l))
    placed: dict[tuple[int, int], float] = {}
    for ch in decision.choices:
        i, j = W.index(ch.left), W.index(ch.right)
        val = ch.coefficient / 2 if ch.word == star(ch.word) else ch.coefficient
        cell = (min(i, j), max(i, j))
        if cell in placed:
            if placed[cell] != val:
                raise NotApplicable(f"{ch.word} and its mirror carry different coefficients")
            continue
        placed[cell] = val
        G[i, j] = G[j, i] = val
    G[:k, :k] = p.rep_h.matrix
    B = G[k:, k:].copy()
    np.fill_diagonal(B, np.nan)
    return PartialBlockMatrix(tuple(W), G[:k, :k].copy(), G[:k, k:].copy(), B)


def complete_diagonal(P: PartialBlockMatrix, margin: float = DEFAULT_MARGIN, tol: float = 1e-9) -> np.ndarray:
    """Fill the unspecified diagonal of ``B`` so the whole matrix is PSD.

    With ``S = A^t G_h^+ A`` each diagonal entry is set to
    ``S_ii + sum_{j != i} |(B - S)_ij| + margin``, which makes the Schur
    complement ``B - S`` strictly diagonally dominant.
    """
    if margin <= 0:
        raise ValueError("margin must be positive")
    if not column_space_contains(P.gh, P.a, tol):
        raise ColumnSpaceViolation("columns of A are not in the column space of G_h")
    if P.m == 0:
        return P.gh.copy()
    S = P.a.T @ pseudo_inverse(P.gh) @ P.a
    off = np.where(np.eye(P.m, dtype=bool), 0.0, P.b - S)
    diag = np.diag(S) + np.abs(off).sum(axis=1) + margin
    M = P.assemble(diag)
    M = 0.5 * (M + M.T)
    if not is_psd(M):
        raise ColumnSpaceViolation("completed matrix is not PSD")
    return M


def diagonal_extension(p: ExtensionProblem, margin: float = DEFAULT_MARGIN) -> tuple[Polynomial, GramLikeMatrix]:
    """Extension through right-chip placement and diagonal completion."""
    P = build_partial_extension(p)
    R = GramLikeMatrix(P.monomials, complete_diagonal(P, margin, p.tol))
    return expand(R), R


def block_extension(
    f: Polynomial,
    h: Polynomial,
    rep_h: Representation,
    corner: float | None = None,
    tol: float = 1e-9,
) -> tuple[Polynomial, GramLikeMatrix]:
    """Extend ``f = h + sum a_j z_j`` by at most ``2r + 1`` terms.

    The monomial vector becomes ``(W_h, 1, z_1, ..., z_r)`` and the new
    block is ``[[corner, d^t], [d, I]]`` with ``d_j = a_j`` (``a_j / 2`` for
    palindromic ``z_j``) and ``corner = sum d_j^2 + 1`` unless given; any
    ``corner >= sum d_j^2`` (and positive) also works.
    """
    rep_h = _as_gram_like(rep_h)
    if not expand(rep_h).almost_equal(h, tol):
        raise HypothesisViolated("rep_h does not expand to h")
    if not is_psd(rep_h.matrix, tol):
        raise HypothesisViolated("rep_h is not positive semidefinite")
    if abs(f.coeff(ONE)) > tol:
        raise HypothesisViolated("f has a constant term")
    rest = (f - h).prune(tol)
    zs = rest.words()
    if ONE in zs:
        raise HypothesisViolated("f - h has a constant term")
    for eta in h.terms:
        for i in range(len(eta) + 1):
            if rc(eta, i) in rest.terms:
                raise HypothesisViolated(f"right chip {rc(eta, i)} of a word of h occurs in f - h")
    Wh = set(rep_h.monomials)
    if ONE in Wh:
        raise HypothesisViolated("1 is a monomial of rep_h")
    if Wh.intersection(zs):
        raise HypothesisViolated("a word of f - h is a monomial of rep_h")
    for z in zs:
        if z != star(z) and star(z) in rest.terms:
            raise HypothesisViolated(f"f - h contains both {z} and its mirror")
    d = np.array([rest.coeff(z) / 2 if z == star(z) else rest.coeff(z) for z in zs])
    base = float(d @ d)
    if corner is None:
        corner = base + 1.0
    if corner < base or corner <= 0:
        raise ValueError(f"corner must be positive and at least {base}")
    r = len(zs)
    lower = np.eye(r + 1)
    lower[0, 0] = corner
    lower[0, 1:] = lower[1:, 0] = d
    k = rep_h.order
    G = np.zeros((k + r + 1, k + r + 1))
    G[:k, :k] = rep_h.matrix
    G[k:, k:] = lower
    R = GramLikeMatrix(tuple(rep_h.monomials) + (ONE,) + tuple(zs), G)
    f_ext = expand(R)
    added = (f_ext - f).prune(tol)
    clash = set(added.terms) & set(f.terms)
    if clash:
        raise HypothesisViolated(f"added words {sorted(clash, key=word_key)} already occur in f")
    return f_ext, R


def gmpe_violations(
    f_ext: Polynomial,
    f: Polynomial,
    h: Polynomial,
    rep_h: Representation,
    rep_ext: Representation,
    tol: float = 1e-9,
) -> list[str]:
    """Reasons why ``rep_ext`` fails to certify a Gram-like-matrix preserving extension."""
    problems = []
    diff = (f_ext - f).prune(tol)
    if diff.is_zero():
        problems.append("extension adds nothing")
    shared = set(diff.terms) & set(f.terms)
    if shared:
        problems.append(f"extension changes existing words {sorted(shared, key=word_key)}")
    if not expand(rep_ext).almost_equal(f_ext, tol):
        problems.append("rep_ext does not expand to the extension")
    if not is_psd(rep_ext.matrix, tol):
        problems.append("rep_ext is not PSD")
    if np.any(np.diag(rep_ext.matrix) <= 0):
        problems.append("rep_ext has a nonpositive diagonal entry")
    if not expand(rep_h).almost_equal(h, tol):
        problems.append("rep_h does not expand to h")
    if rep_ext.order <= rep_h.order:
        problems.append("rep_ext is not larger than rep_h")
    missing = [w for w in rep_h.monomials if w not in rep_ext.monomials]
    if missing:
        problems.append(f"monomials {missing} of rep_h are missing from rep_ext")
    else:
        idx = [rep_ext.index(w) for w in rep_h.monomials]
        sub = rep_ext.matrix[np.ix_(idx, idx)]
        if np.max(np.abs(sub - rep_h.matrix), initial=0.0) > tol:
            problems.append("rep_h is not a principal submatrix of rep_ext")
    return problems


def verify_gmpe(f_ext, f, h, rep_h, rep_ext, tol: float = 1e-9) -> bool:
    return not gmpe_violations(f_ext, f, h, rep_h, rep_ext, tol)


def assemble_block_diagonal(rep_h: Representation, rep_g: Representation) -> Representation:
    W = tuple(rep_h.monomials) + tuple(rep_g.monomials)
    G = np.zeros((len(W), len(W)))
    k = rep_h.order
    G[:k, :k] = rep_h.matrix
    G[k:, k:] = rep_g.matrix
    return Representation(W, G)


def check_block_decomposable(
    rep_h: Representation,
    rep_g: Representation,
    f: Polynomial | None = None,
    tol: float = 1e-9,
    h: Polynomial | None = None,
) -> bool:
    """Whether ``rep_h`` and ``rep_g`` can be stacked block-diagonally.

    True iff the monomial lists are disjoint and the stacked matrix is a
    PSD Gram-like certificate of ``h + g``.  If ``h`` is given, ``rep_h``
    must expand to it.  If ``f`` is given, the result must also verify as an
    extension of ``f`` with respect to ``h``.
    """
    if set(rep_h.monomials) & set(rep_g.monomials):
        return False
    if h is None:
        h = expand(rep_h)
    elif not expand(rep_h).almost_equal(h, tol):
        return False
    R = assemble_block_diagonal(rep_h, rep_g)
    if not is_psd(R.matrix, tol) or np.any(np.diag(R.matrix) <= 0):
        return False
    if f is not None:
        return verify_gmpe(h + expand(rep_g), f, h, rep_h, R, tol)
    return True

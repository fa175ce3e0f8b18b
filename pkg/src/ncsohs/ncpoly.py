"""Polynomials in noncommuting variables with real coefficients.

A word is a tuple of positive variable indices, ``(1, 2, 2)`` standing for
``x1 x2^2``; the empty tuple is the word ``1``.  Polynomials map words to
float coefficients and never store zeros.  Words are ordered by degree and
then lexicographically ("deglex"), which is the canonical order used for
printing and for enumerating monomials.
"""

from __future__ import annotations

import math
import re
from collections.abc import Iterable, Mapping
from types import MappingProxyType
from typing import Union

from .errors import ParseError

Word = tuple[int, ...]
ONE: Word = ()

Scalar = Union[int, float]


def word_key(w: Word) -> tuple[int, Word]:
    """Sort key for the deglex order."""
    return (len(w), w)


def as_word(letters: Iterable[int]) -> Word:
    w = tuple(int(a) for a in letters)
    if any(a < 1 for a in w):
        raise ValueError(f"variable indices must be >= 1, got {w}")
    return w


def star(w: Word) -> Word:
    """Reverse a word."""
    return w[::-1]


def rc(w: Word, i: int) -> Word:
    """Right chip: the last ``i`` letters of ``w`` (all of ``w`` if ``i >= len(w)``)."""
    if i < 0:
        raise ValueError("chip length must be nonnegative")
    if i == 0:
        return ONE
    if i >= len(w):
        return w
    return w[len(w) - i:]


def rc_decompositions(w: Word) -> list[tuple[Word, Word]]:
    """All ways of writing ``w = star(left) + right``.

    The n-th pair is ``(rc(star(w), deg(w) - n), rc(w, n))`` for
    ``n = 0 .. deg(w)``, so there are exactly ``deg(w) + 1`` of them.
    """
    d = len(w)
    ws = star(w)
    return [(rc(ws, d - n), rc(w, n)) for n in range(d + 1)]


def is_hermitian_square(w: Word) -> bool:
    """True iff ``w = star(u) u`` for some word ``u``."""
    d = len(w)
    if d % 2:
        return False
    return w[: d // 2] == star(w[d // 2:])


class Polynomial:
    """Immutable element of the free algebra R<x1, x2, ...>.

    Construct from a mapping ``{word: coefficient}`` or an iterable of
    ``(word, coefficient)`` pairs; repeated words are accumulated and zero
    coefficients dropped.  ``Polynomial.parse`` reads the text format.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable | None = None):
        acc: dict[Word, float] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for w, c in items:
                w = as_word(w)
                acc[w] = acc.get(w, 0.0) + float(c)
        self._terms = MappingProxyType({w: c for w, c in acc.items() if c != 0.0})
        self._hash = None

    # construction helpers

    @classmethod
    def constant(cls, c: Scalar) -> "Polynomial":
        return cls({ONE: c})

    @classmethod
    def var(cls, i: int) -> "Polynomial":
        return cls({(i,): 1.0})

    @classmethod
    def monomial(cls, w: Iterable[int], c: Scalar = 1.0) -> "Polynomial":
        return cls({as_word(w): c})

    @classmethod
    def parse(cls, text: str) -> "Polynomial":
        return parse(text)

    # inspection

    @property
    def terms(self) -> Mapping[Word, float]:
        return self._terms

    def words(self) -> list[Word]:
        """Stored words in deglex order."""
        return sorted(self._terms, key=word_key)

    def items(self) -> list[tuple[Word, float]]:
        return [(w, self._terms[w]) for w in self.words()]

    def coeff(self, w: Iterable[int]) -> float:
        return self._terms.get(tuple(w), 0.0)

    @property
    def degree(self) -> int | None:
        """Largest word length; ``None`` for the zero polynomial."""
        if not self._terms:
            return None
        return max(len(w) for w in self._terms)

    @property
    def n_vars(self) -> int:
        return max((max(w) for w in self._terms if w), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # algebra

    def star(self) -> "Polynomial":
        return Polynomial({star(w): c for w, c in self._terms.items()})

    def is_symmetric(self) -> bool:
        return all(self._terms.get(star(w)) == c for w, c in self._terms.items())

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Polynomial({w: c * other for w, c in self._terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        return Polynomial(
            (u + v, a * b)
            for u, a in self._terms.items()
            for v, b in other._terms.items()
        )

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative powers are not defined")
        out = Polynomial.constant(1.0)
        for _ in range(k):
            out = out * self
        return out

    # comparison

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return dict(self._terms) == dict(other._terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def max_abs_diff(self, other: "Polynomial") -> float:
        words = set(self._terms) | set(other._terms)
        return max((abs(self.coeff(w) - other.coeff(w)) for w in words), default=0.0)

    def almost_equal(self, other: "Polynomial", tol: float = 1e-9) -> bool:
        return self.max_abs_diff(_coerce(other)) <= tol

    def prune(self, tol: float) -> "Polynomial":
        """Drop coefficients with ``|c| <= tol``."""
        return Polynomial({w: c for w, c in self._terms.items() if abs(c) > tol})

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_poly(self)!r})"


def _coerce(x):
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, float)):
        return Polynomial.constant(x)
    return NotImplemented


def involution(f):
    """Apply the involution: reverse a word, or every word of a polynomial."""
    if isinstance(f, Polynomial):
        return f.star()
    return star(tuple(f))


def is_symmetric(f: Polynomial) -> bool:
    return f.is_symmetric()


def degree(f: Polynomial) -> int | None:
    return f.degree


# text format


def format_word(w: Word) -> str:
    if not w:
        return "1"
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        run = j - i
        parts.append(f"x{w[i]}" if run == 1 else f"x{w[i]}^{run}")
        i = j
    return " ".join(parts)


def _format_coeff(c: float) -> str:
    if c.is_integer() and abs(c) < 1e15:
        return str(int(c))
    return repr(c)


def format_poly(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    out = []
    for k, (w, c) in enumerate(f.items()):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if w and a == 1.0:
            body = format_word(w)
        elif w:
            body = f"{_format_coeff(a)} {format_word(w)}"
        else:
            body = _format_coeff(a)
        if k == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<var>[xX]\d+)
  | (?P<op>[-+*^])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    return tokens


def parse(text: str) -> Polynomial:
    """Parse ``"x1^2 + 4 x1 x2 - 2.5 x2 x1 + 1"`` style text.

    Juxtaposed variables multiply noncommutatively; ``x2^3`` repeats a
    letter; an optional ``*`` may separate any two factors.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty input", 0)
    terms: list[tuple[Word, float]] = []
    k = 0
    n = len(tokens)
    first = True
    while k < n:
        sign = 1.0
        kind, val, pos = tokens[k]
        if kind == "op" and val in "+-":
            sign = -1.0 if val == "-" else 1.0
            k += 1
        elif not first:
            raise ParseError(f"expected '+' or '-' before {val!r}", pos)
        first = False
        coeff = 1.0
        letters: list[int] = []
        seen_factor = False
        expect_factor = True
        while k < n:
            kind, val, pos = tokens[k]
            if kind == "num":
                if seen_factor:
                    raise ParseError("coefficient must come first in a term", pos)
                coeff = float(val)
                seen_factor = True
                k += 1
            elif kind == "var":
                idx = int(val[1:])
                if idx < 1:
                    raise ParseError("variable indices start at 1", pos)
                rep = 1
                k += 1
                if k < n and tokens[k][1] == "^":
                    if k + 1 >= n or tokens[k + 1][0] != "num" or not tokens[k + 1][1].isdigit():
                        raise ParseError("exponent must be a nonnegative integer", tokens[k][2])
                    rep = int(tokens[k + 1][1])
                    k += 2
                letters.extend([idx] * rep)
                seen_factor = True
            elif val == "*":
                if not seen_factor:
                    raise ParseError("'*' without a left factor", pos)
                k += 1
                if k >= n or tokens[k][0] not in ("num", "var"):
                    raise ParseError("'*' must be followed by a factor", pos)
                if tokens[k][0] == "num":
                    raise ParseError("coefficient must come first in a term", tokens[k][2])
                continue
            elif val in "+-":
                break
            else:
                raise ParseError(f"unexpected {val!r}", pos)
            expect_factor = False
        if expect_factor:
            at = tokens[k][2] if k < n else len(text)
            raise ParseError("missing term", at)
        terms.append((tuple(letters), sign * coeff))
    return Polynomial(terms)


def parse_word(text: str) -> Word:
    """Parse a single monomial such as ``"x1 x2^2"`` or ``"1"``."""
    f = parse(text)
    if len(f) != 1 or next(iter(f.terms.values())) != 1.0:
        raise ParseError(f"not a monomial: {text!r}", 0)
    return next(iter(f.terms))

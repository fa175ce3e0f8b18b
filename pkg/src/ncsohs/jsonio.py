"""JSON encoding of representations and partial matrices.

A representation is ``{"monomials": ["1", "x1 x2", ...], "matrix": [[...]]}``.
Partial types allow ``null`` matrix entries for unspecified cells; a bare
partial matrix may also be given as a plain list of rows.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import jsonschema
import numpy as np

from .completion import PartialRepresentation, PartialSymMatrix
from .errors import ParseError, SchemaError
from .gram import Representation, fit_gram
from .ncpoly import Polynomial, format_poly, format_word, parse, parse_word

_NUM = {"type": "number"}
_CELL = {"type": ["number", "null"]}


def _matrix_schema(cell: dict) -> dict:
    return {"type": "array", "items": {"type": "array", "items": cell}}


REPRESENTATION_SCHEMA = {
    "type": "object",
    "properties": {
        "monomials": {"type": "array", "items": {"type": "string"}},
        "matrix": _matrix_schema(_NUM),
        "polynomial": {"type": "string"},
    },
    "required": ["monomials"],
}

PARTIAL_REPRESENTATION_SCHEMA = {
    "type": "object",
    "properties": {
        "monomials": {"type": "array", "items": {"type": "string"}},
        "matrix": _matrix_schema(_CELL),
    },
    "required": ["monomials", "matrix"],
}

PARTIAL_MATRIX_SCHEMA = {
    "oneOf": [
        _matrix_schema(_CELL),
        {
            "type": "object",
            "properties": {
                "matrix": _matrix_schema(_CELL),
                "monomials": {"type": "array", "items": {"type": "string"}},
            },
            "required": ["matrix"],
        },
    ]
}


def _validate(data, schema: dict, what: str) -> None:
    try:
        jsonschema.validate(data, schema)
    except jsonschema.ValidationError as e:
        path = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise SchemaError(f"invalid {what} at {path}: {e.message}") from None


def _check_square(rows: list, n: int | None = None) -> None:
    k = len(rows)
    if any(len(r) != k for r in rows):
        raise SchemaError("matrix must be square")
    if n is not None and k != n:
        raise SchemaError(f"matrix has order {k} but there are {n} monomials")
    for r in rows:
        for v in r:
            if v is not None and not math.isfinite(v):
                raise SchemaError("matrix entries must be finite")


def _words(strings: list[str]) -> tuple:
    try:
        return tuple(parse_word(s) for s in strings)
    except ParseError as e:
        raise SchemaError(f"bad monomial: {e}") from None


def read_json(source) -> object:
    """Load JSON from a path, ``"-"`` for stdin, or pass through parsed data."""
    if isinstance(source, (dict, list)):
        return source
    try:
        if str(source) == "-":
            import sys

            return json.load(sys.stdin)
        return json.loads(Path(source).read_text())
    except json.JSONDecodeError as e:
        raise SchemaError(f"not valid JSON: {e}") from None


def load_representation(source, policy: str = "strict", f: Polynomial | None = None) -> Representation:
    """Read a representation; without ``"matrix"`` it is fitted to ``f`` (or ``"polynomial"``)."""
    data = read_json(source)
    _validate(data, REPRESENTATION_SCHEMA, "representation")
    W = _words(data["monomials"])
    try:
        if "matrix" in data:
            _check_square(data["matrix"], len(W))
            return Representation(W, np.array(data["matrix"], dtype=float).reshape(len(W), len(W)))
        if "polynomial" in data:
            f = parse(data["polynomial"])
        if f is None:
            raise SchemaError("representation needs a matrix or a polynomial to fit")
        return fit_gram(f, W, policy)
    except ParseError as e:
        raise SchemaError(f"bad polynomial: {e}") from None
    except ValueError as e:
        if isinstance(e, SchemaError):
            raise
        raise SchemaError(str(e)) from None


def load_partial_matrix(source) -> PartialSymMatrix:
    data = read_json(source)
    _validate(data, PARTIAL_MATRIX_SCHEMA, "partial matrix")
    rows = data["matrix"] if isinstance(data, dict) else data
    _check_square(rows)
    try:
        return PartialSymMatrix(rows)
    except ValueError as e:
        raise SchemaError(str(e)) from None


def load_partial_representation(source) -> PartialRepresentation:
    data = read_json(source)
    _validate(data, PARTIAL_REPRESENTATION_SCHEMA, "partial representation")
    W = _words(data["monomials"])
    _check_square(data["matrix"], len(W))
    try:
        return PartialRepresentation(W, PartialSymMatrix(data["matrix"]))
    except ValueError as e:
        raise SchemaError(str(e)) from None


def representation_to_json(R: Representation) -> dict:
    return {
        "monomials": [format_word(w) for w in R.monomials],
        "matrix": np.asarray(R.matrix, dtype=float).tolist(),
    }


def partial_to_json(P: PartialSymMatrix, monomials=None) -> dict:
    out = {"matrix": P.to_lists()}
    if monomials is not None:
        out = {"monomials": [format_word(w) for w in monomials], **out}
    return out


def polynomial_to_json(f: Polynomial) -> dict:
    return {
        "polynomial": format_poly(f),
        "terms": [[format_word(w), c] for w, c in f.items()],
    }


def polynomial_from_json(data: dict) -> Polynomial:
    if "terms" in data:
        return Polynomial((parse_word(w), c) for w, c in data["terms"])
    return parse(data["polynomial"])

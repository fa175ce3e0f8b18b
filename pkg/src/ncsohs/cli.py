"""Command-line interface.

Subcommands::

    ncsohs expand REP.json
    ncsohs verify-sohs POLY REP.json
    ncsohs extend F H REP_H.json [--mode block|diag] [--margin M]
    ncsohs complete PARTIAL_REP.json
    ncsohs pattern PARTIAL.json

Exit codes: 0 success, 2 input error, 3 extension obstruction,
4 completion infeasible.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import jsonio
from .completion import (
    PartialRepresentation,
    is_chordal,
    is_partial_psd,
    maximal_cliques,
    psd_complete,
    specification_graph,
)
from .errors import (
    AmbientTooLarge,
    ColumnSpaceViolation,
    CompletionFailed,
    HypothesisViolated,
    NotApplicable,
    NotPartialPsd,
    ParseError,
    SchemaError,
    UnrepresentableWord,
    AmbiguousDistribution,
)
from .extension import (
    DEFAULT_MARGIN,
    ExtensionProblem,
    block_extension,
    build_partial_extension,
    check_rc_conditions,
    complete_diagonal,
)
from .gram import GramLikeMatrix, expand, sohs_witness, sum_of_hermitian_squares
from .linalg import is_psd, min_eigenvalue
from .ncpoly import Polynomial, format_poly, format_word, parse
from .regularity import betti_table, subspace_arrangement_ideal

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_OBSTRUCTION = 3
EXIT_INFEASIBLE = 4


class CliError(Exception):
    def __init__(self, code: int, message: str, payload: dict | None = None):
        super().__init__(message)
        self.code = code
        self.payload = payload or {}


def _poly(text: str) -> Polynomial:
    try:
        return parse(text)
    except ParseError as e:
        raise CliError(EXIT_INPUT, f"cannot parse polynomial: {e}") from None


def _matrix_text(M) -> str:
    rows = [[format(float(v), ".6g") if not np.isnan(v) else "*" for v in row] for row in np.asarray(M, float)]
    width = max((len(s) for r in rows for s in r), default=1)
    return "\n".join("  [" + " ".join(s.rjust(width) for s in r) + "]" for r in rows)


def _rep_text(R) -> str:
    return "W = (" + ", ".join(format_word(w) for w in R.monomials) + ")\nG =\n" + _matrix_text(R.matrix)


def cmd_expand(args) -> tuple[dict, str]:
    R = jsonio.load_representation(args.representation, args.policy)
    f = expand(R)
    return jsonio.polynomial_to_json(f), format_poly(f)


def cmd_verify_sohs(args) -> tuple[dict, str]:
    f = _poly(args.polynomial)
    R = jsonio.load_representation(args.representation, args.policy, f)
    g = expand(R)
    equal = g.almost_equal(f, args.tol)
    psd = is_psd(R.matrix, args.tol)
    out = {
        "equal": equal,
        "psd": psd,
        "pass": equal and psd,
        "min_eigenvalue": None if R.order == 0 else min_eigenvalue(R.matrix),
        "representation": jsonio.representation_to_json(R),
    }
    lines = [f"expansion matches: {equal}", f"matrix PSD: {psd}"]
    if equal and psd:
        squares = sohs_witness(R)
        out["squares"] = [format_poly(s.prune(args.tol)) for s in squares]
        out["residual"] = (sum_of_hermitian_squares(squares) - f).max_abs_diff(Polynomial())
        lines.append(f"SOHS certificate with {len(squares)} square(s):")
        lines += [f"  ({s})^* ({s})" for s in out["squares"]]
    else:
        out["squares"] = []
        if not equal:
            lines.append(f"W^* G W = {format_poly(g)}")
    lines.append("PASS" if out["pass"] else "FAIL")
    return out, "\n".join(lines)


def cmd_extend(args) -> tuple[dict, str]:
    f, h = _poly(args.f), _poly(args.h)
    rep_h = jsonio.load_representation(args.rep_h, args.policy, h)
    try:
        p = ExtensionProblem.from_polynomials(f, h, rep_h, args.tol)
    except ValueError as e:
        raise CliError(EXIT_INPUT, f"inconsistent extension problem: {e}") from None
    decision = check_rc_conditions(p)
    if not decision.ok:
        words = [format_word(w) for w in decision.obstructed]
        raise CliError(
            EXIT_OBSTRUCTION,
            f"no right-chip split of {', '.join(words)} avoids W_h on one side; "
            "no extension preserves this Gram-like matrix",
            {"obstruction": "rc", "obstructed": words},
        )
    try:
        if args.mode == "block":
            f_ext, R = block_extension(f, h, rep_h, tol=args.tol)
        else:
            P = build_partial_extension(p, decision)
            R = GramLikeMatrix(P.monomials, complete_diagonal(P, args.margin, args.tol))
            f_ext = expand(R)
    except HypothesisViolated as e:
        raise CliError(EXIT_OBSTRUCTION, f"hypothesis violated: {e}", {"obstruction": "hypothesis"}) from None
    except ColumnSpaceViolation as e:
        raise CliError(EXIT_OBSTRUCTION, str(e), {"obstruction": "column-space"}) from None
    except NotApplicable as e:
        raise CliError(EXIT_OBSTRUCTION, str(e), {"obstruction": "not-applicable"}) from None
    added = (f_ext - f).prune(args.tol)
    out = {
        "mode": args.mode,
        "extension": jsonio.polynomial_to_json(f_ext),
        "added": jsonio.polynomial_to_json(added),
        "representation": jsonio.representation_to_json(R),
    }
    text = f"f~ = {format_poly(f_ext)}\nadded: {format_poly(added)}\n{_rep_text(R)}"
    return out, text


def cmd_complete(args) -> tuple[dict, str]:
    P = jsonio.load_partial_representation(args.partial)
    M = psd_complete(P.pmatrix, max(args.tol, 1e-8))
    R = GramLikeMatrix(P.monomials, M)
    f = expand(R)
    out = {"completion": jsonio.polynomial_to_json(f), "representation": jsonio.representation_to_json(R)}
    return out, f"f = {format_poly(f)}\n{_rep_text(R)}"


def cmd_pattern(args) -> tuple[dict, str]:
    P = jsonio.load_partial_matrix(args.partial)
    G = specification_graph(P)
    ch = is_chordal(G)
    cliques = maximal_cliques(G)
    I = subspace_arrangement_ideal(P)
    try:
        B = betti_table(I)
    except AmbientTooLarge as e:
        raise CliError(EXIT_INPUT, str(e)) from None
    reg = B.regularity()
    out = {
        "order": P.order,
        "edges": sorted([list(e) for e in G.edges]),
        "chordal": ch.chordal,
        "peo" if ch.chordal else "chordless_cycle": ch.witness,
        "maximal_cliques": [list(K) for K in cliques],
        "partial_psd": is_partial_psd(P, args.tol),
        "ideal": [[p, q] for p, q in sorted(I.generators)],
        "betti": B.to_json(),
        "regularity": reg,
        "two_regular": ch.chordal,
    }
    lines = [
        f"specification graph: {P.order} vertices, edges {out['edges']}",
        f"chordal: {ch.chordal} ({'PEO' if ch.chordal else 'chordless cycle'} {ch.witness})",
        f"maximal cliques: {out['maximal_cliques']}",
        f"partial PSD: {out['partial_psd']}",
        f"ideal: {I}",
        "Betti table:",
        B.format() if B.betti else "  (zero ideal)",
        f"regularity: {reg}",
        f"2-regular: {ch.chordal}",
    ]
    return out, "\n".join(lines)


COMMANDS = {
    "expand": cmd_expand,
    "verify-sohs": cmd_verify_sohs,
    "extend": cmd_extend,
    "complete": cmd_complete,
    "pattern": cmd_pattern,
}


def _positive(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=_positive, default=argparse.SUPPRESS, help="numerical tolerance (default 1e-9)")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit JSON")
    common.add_argument(
        "--policy",
        choices=("strict", "even", "first"),
        default=argparse.SUPPRESS,
        help="how to fit a matrix when the representation JSON has none",
    )
    parser = argparse.ArgumentParser(prog="ncsohs", description=__doc__.split("\n")[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="expand W^* G W")
    p.add_argument("representation")

    p = sub.add_parser("verify-sohs", parents=[common], help="check an SOHS certificate")
    p.add_argument("polynomial")
    p.add_argument("representation")

    p = sub.add_parser("extend", parents=[common], help="Gram-like matrix preserving SOHS extension")
    p.add_argument("f")
    p.add_argument("h")
    p.add_argument("rep_h")
    p.add_argument("--mode", choices=("block", "diag"), default="block")
    p.add_argument("--margin", type=_positive, default=DEFAULT_MARGIN)

    p = sub.add_parser("complete", parents=[common], help="SOHS completion of a partial representation")
    p.add_argument("partial")

    p = sub.add_parser("pattern", parents=[common], help="chordality, Betti table and regularity of a pattern")
    p.add_argument("partial")
    return parser


def _emit(payload: dict, text: str, as_json: bool, stream) -> None:
    if as_json:
        json.dump(payload, stream, indent=2)
        stream.write("\n")
    else:
        stream.write(text + "\n")


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    args.tol = getattr(args, "tol", 1e-9)
    args.json = getattr(args, "json", False)
    args.policy = getattr(args, "policy", "strict")
    try:
        payload, text = COMMANDS[args.command](args)
    except CliError as e:
        code, msg, extra = e.code, str(e), e.payload
    except (SchemaError, UnrepresentableWord, AmbiguousDistribution, OSError) as e:
        code, msg, extra = EXIT_INPUT, str(e), {}
    except (NotPartialPsd, CompletionFailed) as e:
        extra = {}
        if isinstance(e, CompletionFailed) and e.minor is not None:
            extra = {"minor": list(e.minor), "eigenvalue": e.eigenvalue}
        code, msg = EXIT_INFEASIBLE, str(e)
    else:
        _emit(payload, text, args.json, stdout)
        return EXIT_OK
    if args.json:
        _emit({"error": msg, "exit_code": code, **extra}, "", True, stdout)
    stderr.write(f"ncsohs {args.command}: {msg}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Noncommutative polynomials, SOHS certificates, Gram-like extensions and completions."""

from .completion import (
    Chordality,
    PartialRepresentation,
    PartialSymMatrix,
    SpecGraph,
    find_chordless_cycle,
    is_chordal,
    is_partial_psd,
    is_quasi_sohs,
    maximal_cliques,
    maximum_cardinality_search,
    psd_complete,
    sohs_complete,
    specification_graph,
)
from .errors import (
    AmbientTooLarge,
    AmbiguousDistribution,
    ColumnSpaceViolation,
    CompletionFailed,
    HypothesisViolated,
    NotApplicable,
    NotPartialPsd,
    NotPsdError,
    ParseError,
    SchemaError,
    UnrepresentableWord,
)
from .extension import (
    ExtensionProblem,
    PartialBlockMatrix,
    block_extension,
    build_partial_extension,
    check_block_decomposable,
    check_rc_conditions,
    complete_diagonal,
    diagonal_extension,
    verify_gmpe,
)
from .gram import (
    GramLikeMatrix,
    Representation,
    candidate_monomials,
    expand,
    fit_gram,
    gram_matrix,
    is_sohs_certificate,
    sohs_witness,
    sum_of_hermitian_squares,
)
from .linalg import is_pd, is_psd, pseudo_inverse, schur_complement
from .ncpoly import Polynomial, format_poly, format_word, involution, parse, parse_word, rc, rc_decompositions, star
from .regularity import (
    BettiTable,
    MonomialIdeal,
    betti_table,
    is_2_regular,
    regularity,
    stanley_reisner_complex,
    subspace_arrangement_ideal,
)

__version__ = "0.1.0"

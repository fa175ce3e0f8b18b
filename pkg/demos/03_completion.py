# Completing partially specified Gram-like matrices.
#
# Unspecified coefficients (None) become free entries.  A PSD completion
# gives an SOHS completion of the polynomial.  Chordal specification graphs
# always complete; non-chordal ones may or may not.
import math

from ncsohs import (
    CompletionFailed,
    PartialRepresentation,
    PartialSymMatrix,
    is_chordal,
    is_quasi_sohs,
    psd_complete,
    sohs_complete,
    specification_graph,
)

N = None
print(psd_complete(PartialSymMatrix([[5, 5, N], [5, 5, 5], [N, 5, 5]])))

W = [(), (1, 2), (2, 1), (2, 2)]
for label, r in (("fives", 5.0), ("sqrt 5", math.sqrt(5))):
    P = PartialRepresentation(W, PartialSymMatrix([[5, 5, N, r], [5, 5, 5, N], [N, 5, 5, 5], [r, N, 5, 5]]))
    G = specification_graph(P.pmatrix)
    print()
    print(f"{label}: quasi SOHS {is_quasi_sohs(P)}, chordal {is_chordal(G).chordal}")
    try:
        f, R = sohs_complete(P)
    except CompletionFailed as e:
        print("  no completion:", e)
    else:
        print("  f =", f.prune(1e-9))

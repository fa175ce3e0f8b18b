# Betti tables of the ideal generated by x_i x_j over the unspecified pairs.
#
# The pattern is 2-regular exactly when its specification graph is chordal.
from ncsohs import PartialSymMatrix, betti_table, is_2_regular, subspace_arrangement_ideal

N = None
patterns = {
    "chordal, two missing pairs": [[5, 5, 5, N], [5, 5, 5, N], [5, 5, 5, 5], [N, N, 5, 5]],
    "four-cycle": [[5, 5, N, 2.2], [5, 5, 5, N], [N, 5, 5, 5], [2.2, N, 5, 5]],
    "two disjoint edges and a point": [
        [2, 1, N, N, N],
        [1, 2, N, N, N],
        [N, N, 2, 1, N],
        [N, N, 1, 2, N],
        [N, N, N, N, 2],
    ],
}
for name, rows in patterns.items():
    P = PartialSymMatrix(rows)
    I = subspace_arrangement_ideal(P)
    B = betti_table(I)
    print(name, I)
    print(B.format())
    print("regularity", B.regularity(), "| 2-regular", is_2_regular(P), is_2_regular(P, method="betti"))
    print()

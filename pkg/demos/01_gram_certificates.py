# Gram-like certificates for sums of Hermitian squares.
#
# A symmetric noncommutative polynomial f is a sum of Hermitian squares
# exactly when f = W^* G W for some monomial vector W and PSD matrix G.
import numpy as np

from ncsohs import Representation, expand, fit_gram, is_psd, parse, sohs_witness

# A polynomial with a rank-one certificate over W = (x1, x2).
f = parse("x1^2 + 4 x1 x2 + 4 x2 x1 + 16 x2^2")
R = fit_gram(f, [(1,), (2,)])
print("f =", f)
print("G =", R.matrix.tolist(), "eigenvalues", np.linalg.eigvalsh(R.matrix))

# Reordering W conjugates G by the same permutation and leaves f unchanged.
swapped = R.permuted([1, 0])
print("swapped G =", swapped.matrix.tolist(), "->", expand(swapped))

# The PSD matrix factors into squares: f = g^* g.
(g,) = sohs_witness(R)
print("g =", g.prune(1e-12))
print("g^* g == f:", (g.star() * g).almost_equal(f))

# A representation can expand correctly and still be indefinite.
W5 = [(), (1,), (1, 2), (2,), (2, 2)]
G5 = [[1, 1, 0, 0, 0], [1, 1, 0, 0, 1], [0, 0, 1, 0, 0], [0, 0, 0, 2, 0], [0, 1, 0, 0, 1]]
R5 = Representation(W5, G5)
print()
print("W^* G W =", expand(R5))
print("PSD:", is_psd(R5.matrix))
sub = np.array(G5, float)[np.ix_([0, 1, 4], [0, 1, 4])]
print("minor on (1, x1, x2^2) has determinant", round(np.linalg.det(sub), 12))

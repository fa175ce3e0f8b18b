# Extensions that keep a chosen Gram-like matrix of the SOHS part.
#
# f = h + (extra words); h has a PSD Gram-like matrix G_h.  We look for
# f~ = f + (new words only) whose PSD Gram-like matrix contains G_h.
import numpy as np

from ncsohs import (
    ColumnSpaceViolation,
    ExtensionProblem,
    Representation,
    block_extension,
    build_partial_extension,
    check_rc_conditions,
    complete_diagonal,
    diagonal_extension,
    parse,
    verify_gmpe,
)

# Arrow-block construction: append 1 and the extra words to W_h.
f, h = parse("x1^2 + x1 x2"), parse("x1^2")
rep_h = Representation([(1,)], [[1]])
f_ext, R = block_extension(f, h, rep_h)
print("f~ =", f_ext)
print("W~ =", R.monomials)
print(R.matrix)
print("verified:", verify_gmpe(f_ext, f, h, rep_h, R))

# Any larger corner still works, so there are infinitely many such extensions.
for corner in (2, 5, 50):
    g_ext, S = block_extension(f, h, rep_h, corner=corner)
    print(f"corner {corner}: {g_ext}")

# Obstruction: x can only be split as 1.x or x.1, and both parts already lie in W_h.
p = ExtensionProblem.from_polynomials(parse("x1^2 + x1 + 5"), parse("x1^2 + 5"), Representation([(), (1,)], [[5, 0], [0, 1]]))
print()
print("right-chip check:", check_rc_conditions(p))

# Right-chip placement followed by diagonal completion.
p = ExtensionProblem.from_polynomials(parse("x1^2 + 1 + x1 x2"), parse("x1^2 + 1"), Representation([(), (1,)], np.eye(2)))
print()
print("partial matrix:", build_partial_extension(p).to_lists())
f_ext, R = diagonal_extension(p)
print("f~ =", f_ext)
print(R.matrix)

# When G_h is singular the columns of A must lie in its column space.
p = ExtensionProblem.from_polynomials(
    parse("x1^2 + x2^2 + x1 x2 + x2 x1 + 2 x1 - 2 x2"),
    parse("x1^2 + x2^2 + x1 x2 + x2 x1"),
    Representation([(1,), (2,)], [[1, 1], [1, 1]]),
)
try:
    complete_diagonal(build_partial_extension(p))
except ColumnSpaceViolation as e:
    print()
    print("diagonal completion refused:", e)
for d in (0, 1, 10):
    print(f"  det [[1,1,1],[1,1,-1],[1,-1,{d}]] =", round(np.linalg.det([[1, 1, 1], [1, 1, -1], [1, -1, d]]), 9))

"""Tame parameters, the block-matrix transfer, and word invariants.

Run:  python demos/03_tame_parameters.py
"""

from theta_coords import (
    GF,
    Matrix,
    RingContext,
    Specialization,
    TameParam,
    check_tame,
    l_theta,
    pullback_coefficients,
    word_invariants,
)
from theta_coords.tame import all_words, scalar_blocks

# Over F_13 with q = 3, the element 4 is a square root of q: 16 = 3 mod 13.
F13 = GF(13)
ctx = RingContext(3)
spec = Specialization(ctx, F13, 4)

# sigma has eigenvalues 5 and 8, swapped by x -> x^3; F swaps the eigenlines.
P = TameParam(Matrix(F13, [[0, 1], [1, 0]]), Matrix.diag(F13, [5, 8]), ctx)
print("F sigma F^-1 == sigma^q :", check_tame(P))

Q = l_theta(P, 4, spec)
print("transferred Frobenius:")
print(Q.frob)
print("transferred sigma:")
print(Q.gen)
print("still tame:", check_tame(Q))
print()

# The GIT coordinates are charpoly coefficients of words in F and sigma.
# Pushing forward multiplies by a known factor coming from the scalar
# blocks; dividing it back out recovers the source coordinates.
D = scalar_blocks(2, 4, spec.v_image)
print("scalar blocks:", [str(d) for d in D])
for w in list(all_words(3))[:8]:
    pushed = word_invariants(Q, w)
    back = pullback_coefficients(pushed, scalar_blocks=D)
    fmt = lambda c: "(" + ", ".join(str(x) for x in c) + ")"
    print(f"{str(w):4s} pushed {fmt(pushed.coeffs):20s} pulled back {fmt(back.coeffs)}")

"""The Rallis map on Laurent coordinates, and its dual on Satake parameters.

Run:  python demos/01_rallis_map.py
"""

from theta_coords import (
    QV,
    LaurentPoly,
    apply_rallis,
    build_rallis,
    elementary,
    invariant_preimage,
    point_image,
    vpow,
)

# q is never a number here: v stands for a square root of q, and q = v^2.
for n, m in [(2, 1), (3, 1), (3, 2), (3, 3)]:
    r = build_rallis(n, m)
    print(f"theta^#_{n},{m}:", ", ".join(f"X{i + 1} -> {im}" for i, im in enumerate(r.images)))
print()

# Substituting into the elementary symmetric functions of GL_3 gives
# symmetric functions of GL_1.
r = build_rallis(3, 1)
for k in (1, 2, 3):
    print(f"e_{k}(X1..X3)  ->  {apply_rallis(r, elementary(k, 3))}")
print()

# On points the map goes the other way: one Satake parameter a of GL_1
# becomes three of GL_3.
a = [QV.v + 2]
print("point_image({v + 2}, 3) =", list(point_image(a, 3, v=QV.v)))

# Evaluating f upstairs at the image point agrees with evaluating the pulled
# back function downstairs.
f = elementary(2, 3) + elementary(3, 3) ** -1
lhs = f.evaluate(point_image(a, 3, v=QV.v).entries)
rhs = apply_rallis(r, f).evaluate(a)
print("f(point_image(a)) =", lhs)
print("theta^#(f)(a)     =", rhs)
assert lhs == rhs
print()

# Every symmetric function downstairs has a symmetric preimage: this is
# what makes the map on centers a closed immersion.
X = LaurentPoly.var(0, 1)
g = X + X**-1 + vpow(1) * 3
f = invariant_preimage(g, 3)
print("preimage of", g, "in 3 variables:")
print("   ", f)
assert apply_rallis(r, f) == g

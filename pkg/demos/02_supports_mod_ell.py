"""Theta on supercuspidal supports and what happens modulo ell.

The trivial character 1_n of GL_n and its twist |.| 1_n have distinct
supports over a field of characteristic zero, but they collide in any
characteristic ell dividing q^n - 1.

Run:  python demos/02_supports_mod_ell.py
"""

from theta_coords import (
    CuspidalSymbol,
    RingContext,
    Specialization,
    Support,
    UnramifiedTwist,
    support_equal,
    theta_inductive_check,
    theta_support,
    trivial_rep_support,
    twist_support,
    vpow,
)
from theta_coords.scalars import is_prime

s = trivial_rep_support(1)
for n in (1, 2, 3, 4):
    print(f"theta_{n},1(1_1) =", theta_support(s, n))
print()

# a cuspidal symbol on GL_2 goes to its contragredient, twisted
rho = CuspidalSymbol("rho", 2, "rho~")
s = Support(((rho, UnramifiedTwist(1)),))
print("theta_4,2", s, "=", theta_support(s, 4))
print("inductive relation through GL_3:", theta_inductive_check(2, 3, 4, s))
print()

print(" q  n   ell with 1_n ~ |.|1_n (mod ell)      ell | q^n - 1")
for q in (2, 3, 5):
    ctx = RingContext(q)
    for n in (1, 2, 3):
        one = trivial_rep_support(n)
        twisted = twist_support(one, vpow(2))  # |.| has parameter q = v^2
        hits = []
        for ell in range(2, 50):
            if is_prime(ell) and ell != q and support_equal(one, twisted, Specialization.auto(ctx, ell)):
                hits.append(ell)
        divisors = [ell for ell in range(2, 50) if is_prime(ell) and (q**n - 1) % ell == 0]
        print(f"{q:2d} {n:2d}   {str(hits):35s}  {divisors}")

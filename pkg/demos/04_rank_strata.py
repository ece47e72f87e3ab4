"""Rank strata of n x m matrices over a finite field.

Each stratum O_k (rank exactly k) is a single GL_n x GL_m orbit; counting
both sides of orbit-stabilizer is a cheap but complete check.

Run:  python demos/04_rank_strata.py
"""

import numpy as np

from theta_coords import enumerate_strata, orbit_transitivity_check
from theta_coords.strata import all_matrices, batch_rank

q = 3
mats = all_matrices(2, 3, q)
ranks = batch_rank(mats, q)
print(f"{len(mats)} matrices 2x3 over F_{q}; rank histogram {np.bincount(ranks).tolist()}")
print()

print(" n m  q   |O_k|                      |O_k| * |St_k| == |GL_n||GL_m|")
for q in (2, 3, 4):
    for n, m in [(1, 1), (2, 1), (2, 2), (3, 2)]:
        r = enumerate_strata(n, m, q)
        G = r.group_orders[0] * r.group_orders[1]
        ok = all(c * s == G for c, s in zip(r.counts, r.stabilizer_orders))
        print(f" {n} {m} {q:2d}   {str(list(r.counts)):26s} {ok}")
print()

n, m, q = 2, 2, 3
print(f"one orbit per stratum for {n}x{m} over F_{q}:",
      [orbit_transitivity_check(n, m, k, q) for k in range(min(n, m) + 1)])

"""Rank stratification of n x m matrices over a finite field F_q.

The strata O_k (rank exactly k) are single GL_n x GL_m orbits, with
stabilizer of x_k = [[I_k, 0], [0, 0]] of order

    |GL_k| |GL_{n-k}| |GL_{m-k}| q^{k(n-k) + k(m-k)}.

Everything here is checked by brute force: ranks by batched Gaussian
elimination over all q^{nm} matrices, transitivity by orbit closure.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BadShape, TooLarge
from .scalars import is_prime

MAX_SPACE = 2**24

# Conway polynomials, coefficients low -> high (monic)
CONWAY = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 2): (3, 6, 1),
    (7, 3): (4, 0, 6, 1),
}


def prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                break
            f, r = 0, q
            while r % p == 0:
                r //= p
                f += 1
            if r == 1:
                return p, f
            break
    raise ValueError(f"{q} is not a prime power")


class FqTables:
    """F_q with elements encoded as 0..q-1 (base-p digits = polynomial coefficients)."""

    def __init__(self, q: int):
        p, f = prime_power(q)
        if f > 1 and (p, f) not in CONWAY:
            raise ValueError(f"no Conway polynomial tabulated for F_{q}")
        self.q, self.p, self.f = q, p, f
        digits = [self._digits(x) for x in range(q)]
        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        for x in range(q):
            for y in range(q):
                add[x, y] = self._encode([(a + b) % p for a, b in zip(digits[x], digits[y])])
                mul[x, y] = self._encode(self._polymul(digits[x], digits[y]))
        self.add = add
        self.mul = mul
        self.neg = np.array([int(np.argmax(add[x] == 0)) for x in range(q)])
        self.sub = add[:, self.neg]
        inv = np.zeros(q, dtype=np.int64)
        for x in range(1, q):
            inv[x] = int(np.argmax(mul[x] == 1))
        self.inv = inv
        self.primitive = next(g for g in range(1, q) if self._order(g) == q - 1)
        # additive generators over F_p: 1, t, t^2, ...
        self.basis = [p**i for i in range(f)]

    def _digits(self, x):
        return [(x // self.p**i) % self.p for i in range(self.f)]

    def _encode(self, d):
        return sum(int(c) * self.p**i for i, c in enumerate(d))

    def _polymul(self, a, b):
        p, f = self.p, self.f
        prod = [0] * (2 * f - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
        if f > 1:
            mod = CONWAY[(p, f)]
            for k in range(len(prod) - 1, f - 1, -1):
                c = prod[k]
                if c:
                    for i in range(f + 1):
                        prod[k - f + i] = (prod[k - f + i] - c * mod[i]) % p
        return prod[:f]

    def _order(self, g):
        x, k = g, 1
        while x != 1:
            x = int(self.mul[x, g])
            k += 1
        return k


@lru_cache(maxsize=None)
def field_tables(q: int) -> FqTables:
    return FqTables(q)


def gl_order(r: int, q: int) -> int:
    out = 1
    for i in range(r):
        out *= q**r - q**i
    return out


def _guard(n, m, q):
    if n < 1 or m < 1:
        raise BadShape("matrix sizes must be positive")
    if q ** (n * m) > MAX_SPACE:
        raise TooLarge(f"q^(nm) = {q}^{n * m} exceeds {MAX_SPACE}")


def all_matrices(n: int, m: int, q: int) -> np.ndarray:
    """Every n x m matrix over F_q, shape (q^{nm}, n, m); index = base-q digits."""
    _guard(n, m, q)
    N = q ** (n * m)
    idx = np.arange(N, dtype=np.int64)
    digits = np.empty((N, n * m), dtype=np.int64)
    for j in range(n * m):
        digits[:, j] = idx % q
        idx //= q
    return digits.reshape(N, n, m)


def batch_rank(mats: np.ndarray, q: int) -> np.ndarray:
    """Ranks of a stack of matrices over F_q by Gaussian elimination."""
    T = field_tables(q)
    A = mats.copy()
    N, n, m = A.shape
    rank = np.zeros(N, dtype=np.int64)
    rows = np.arange(n)
    ar = np.arange(N)
    for j in range(m):
        cand = (A[:, :, j] != 0) & (rows[None, :] >= rank[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        sel = ar[has]
        piv = np.argmax(cand[has], axis=1)
        dst = rank[has].clip(max=n - 1)
        # swap pivot row into position `rank`
        prow = A[sel, piv].copy()
        A[sel, piv] = A[sel, dst]
        A[sel, dst] = prow
        # normalize and clear the rows below
        scale = T.inv[prow[:, j]]
        prow = T.mul[scale[:, None], prow]
        A[sel, dst] = prow
        for r in range(n):
            below = r > dst
            if not below.any():
                continue
            s2 = sel[below]
            c = A[s2, r, j]
            A[s2, r] = T.sub[A[s2, r], T.mul[c[:, None], prow[below]]]
        rank[sel] += 1
    return rank


@dataclass(frozen=True)
class StrataReport:
    n: int
    m: int
    q: int
    counts: tuple
    cumulative: tuple
    stabilizer_orders: tuple
    group_orders: tuple

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "q": self.q,
            "counts": list(self.counts),
            "cumulative": list(self.cumulative),
            "stabilizer_orders": [str(x) for x in self.stabilizer_orders],
            "group_orders": [str(x) for x in self.group_orders],
        }


def enumerate_strata(n: int, m: int, q: int) -> StrataReport:
    _guard(n, m, q)
    field_tables(q)
    ranks = batch_rank(all_matrices(n, m, q), q)
    r = min(n, m)
    counts = tuple(int(x) for x in np.bincount(ranks, minlength=r + 1))
    cumulative = tuple(sum(counts[k:]) for k in range(r + 1))
    stabs = tuple(stabilizer_order(n, m, k, q) for k in range(r + 1))
    return StrataReport(n, m, q, counts, cumulative, stabs, (gl_order(n, q), gl_order(m, q)))


def stabilizer_order(n: int, m: int, k: int, q: int) -> int:
    if not 0 <= k <= min(n, m):
        raise BadShape(f"rank {k} out of range for {n}x{m}")
    return (
        gl_order(k, q)
        * gl_order(n - k, q)
        * gl_order(m - k, q)
        * q ** (k * (n - k) + k * (m - k))
    )


def representative(n: int, m: int, k: int) -> tuple:
    """x_k = [[I_k, 0], [0, 0]] as a flat row-major tuple."""
    return tuple(1 if (i == j and i < k) else 0 for i in range(n) for j in range(m))


def _generators(d: int, T: FqTables):
    """Transvections I + a e_ij (a over an F_p-basis) and diag(g, 1, ..., 1)."""
    gens = []
    for i in range(d):
        for j in range(d):
            if i != j:
                for a in T.basis:
                    g = [[1 if r == c else 0 for c in range(d)] for r in range(d)]
                    g[i][j] = a
                    gens.append(g)
    g = [[1 if r == c else 0 for c in range(d)] for r in range(d)]
    g[0][0] = T.primitive
    gens.append(g)
    return gens


def _matmul(a, b, T, rows, inner, cols):
    add, mul = T.add, T.mul
    out = []
    for i in range(rows):
        for j in range(cols):
            acc = 0
            for k in range(inner):
                x = a[i * inner + k]
                y = b[k * cols + j]
                if x and y:
                    acc = int(add[acc, mul[x, y]])
            out.append(acc)
    return tuple(out)


def orbit_closure(n: int, m: int, k: int, q: int) -> set:
    """Orbit of x_k under left GL_n and right GL_m multiplication (breadth first)."""
    _guard(n, m, q)
    if not 0 <= k <= min(n, m):
        raise BadShape(f"rank {k} out of range for {n}x{m}")
    T = field_tables(q)
    left = [tuple(x for r in g for x in r) for g in _generators(n, T)]
    right = [tuple(x for r in g for x in r) for g in _generators(m, T)]
    start = representative(n, m, k)
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for g in left:
            y = _matmul(g, x, T, n, n, m)
            if y not in seen:
                seen.add(y)
                queue.append(y)
        for h in right:
            y = _matmul(x, h, T, n, m, m)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def orbit_transitivity_check(n: int, m: int, k: int, q: int) -> bool:
    """True iff the orbit of x_k is exactly the set of rank-k matrices."""
    orbit = orbit_closure(n, m, k, q)
    mats = all_matrices(n, m, q)
    ranks = batch_rank(mats, q)
    stratum = {tuple(int(x) for x in mats[i].ravel()) for i in np.flatnonzero(ranks == k)}
    return orbit == stratum

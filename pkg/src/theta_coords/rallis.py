"""The Rallis map on principal-block coordinates and its dual on Satake points.

``build_rallis(n, m)`` is the ring map R[X_1^{±1}..X_n^{±1}] -> R[X_1^{±1}..X_m^{±1}]

    X_i -> v^{-(n-m)} X_i^{-1}          (1 <= i <= m)
    X_i -> v^{2(i-n) + (n-1)}           (m < i <= n)

with ``q = v^2``.  On points it is :func:`point_image`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import ArityMismatch, BadShape, NonInvertibleEntry, NotFoundWithinBound, NotInvariant
from .laurent import LaurentPoly, monomial_symmetric
from .scalars import V, BaseScalar, vpow


def constant_exponent(i: int, n: int) -> int:
    """v-exponent of the image of X_i for m < i <= n (1-based)."""
    return 2 * (i - n) + (n - 1)


@dataclass(frozen=True)
class RallisMap:
    n: int
    m: int
    images: tuple

    def __call__(self, f: LaurentPoly) -> LaurentPoly:
        return apply_rallis(self, f)


def build_rallis(n: int, m: int) -> RallisMap:
    if not 1 <= m <= n:
        raise BadShape(f"need 1 <= m <= n, got m={m}, n={n}")
    images = []
    for i in range(1, n + 1):
        if i <= m:
            e = [0] * m
            e[i - 1] = -1
            images.append(LaurentPoly(m, {tuple(e): vpow(-(n - m))}))
        else:
            images.append(LaurentPoly.constant(vpow(constant_exponent(i, n)), m))
    return RallisMap(n, m, tuple(images))


def apply_rallis(rmap: RallisMap, f: LaurentPoly) -> LaurentPoly:
    if f.nvars != rmap.n:
        raise ArityMismatch(f"Rallis map expects {rmap.n} variables, got {f.nvars}")
    return f.substitute(rmap.images)


class ParameterPoint:
    """Multiset of invertible Satake parameters.

    Entries keep their construction order so that non-symmetric functions can
    still be evaluated; equality is multiset equality.
    """

    __slots__ = ("entries",)

    def __init__(self, entries):
        entries = tuple(entries)
        for a in entries:
            if not a:
                raise NonInvertibleEntry(f"entry {a!r} is not invertible")
            if isinstance(a, BaseScalar) and not a.is_unit():
                raise NonInvertibleEntry(f"{a} is not a unit of Q[v, 1/v]")
        self.entries = entries

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def multiset(self) -> Counter:
        return Counter(self.entries)

    def __eq__(self, other):
        if not isinstance(other, ParameterPoint):
            return NotImplemented
        return self.multiset() == other.multiset()

    def __repr__(self):
        return f"ParameterPoint({list(self.entries)!r})"

    def evaluate(self, f: LaurentPoly, embed=None):
        return f.evaluate(self.entries, embed)


def point_image(a, n: int, v=V) -> ParameterPoint:
    """Dual of the Rallis map on points: ``m`` Satake parameters to ``n``.

    ``v`` is the square root of q in the entries' ring (the formal ``v`` by
    default; pass ``QV.v`` or a specialized root for other rings).
    """
    a = a if isinstance(a, ParameterPoint) else ParameterPoint(a)
    m = len(a)
    if m > n:
        raise BadShape(f"cannot push {m} parameters to rank {n}")
    twist = v ** (-(n - m))
    out = [twist * x ** -1 for x in a.entries]
    out += [v ** constant_exponent(i, n) for i in range(m + 1, n + 1)]
    return ParameterPoint(out)


def _check_invariant(g: LaurentPoly):
    for i in range(g.nvars - 1):
        if g.swap(i, i + 1) != g:
            raise NotInvariant(f"not fixed by the transposition ({i + 1} {i + 2})")


def default_bound(g: LaurentPoly, n: int) -> int:
    return g.max_degree() + (n - g.nvars) + 2


def invariant_preimage(g: LaurentPoly, n: int, bound: int | None = None, retries: int = 4) -> LaurentPoly:
    """An S_n-invariant ``f`` with ``apply_rallis(build_rallis(n, m), f) == g``.

    The search space is spanned by orbit sums ``m_lam`` with every exponent
    entry bounded by ``bound`` in absolute value.  Written against the target
    monomial basis, the images of the ``m_lam`` with ``lam = (-mu, 0, ..., 0)``
    form a unitriangular system when target orbits are ordered by L1 norm of
    the exponent: the leading monomial of ``image(m_lam)`` is ``X^mu`` with
    coefficient ``v^{(n-m)|mu|}`` and every other monomial is strictly shorter.
    The system is solved by back substitution from the longest orbit down.
    """
    m = g.nvars
    rmap = build_rallis(n, m)
    _check_invariant(g)
    if bound is None:
        bound = default_bound(g, n)
    for _ in range(retries + 1):
        try:
            return _solve(g, rmap, bound)
        except NotFoundWithinBound:
            bound *= 2
    raise NotFoundWithinBound(f"no preimage with exponents bounded by {bound // 2}")


def _solve(g: LaurentPoly, rmap: RallisMap, bound: int) -> LaurentPoly:
    n, m = rmap.n, rmap.m
    residual = g
    f = LaurentPoly(n)
    cache: dict[tuple, LaurentPoly] = {}
    while residual:
        # pick the orbit of largest L1 norm; ties by lexicographic exponent order
        lead = max(residual.terms, key=lambda e: (sum(map(abs, e)), tuple(sorted(e))))
        mu = tuple(sorted(lead, reverse=True))
        if max(map(abs, mu), default=0) > bound:
            raise NotFoundWithinBound(f"orbit {mu} exceeds bound {bound}")
        lam = tuple(sorted((-x for x in mu), reverse=True)) + (0,) * (n - m)
        if lam not in cache:
            cache[lam] = apply_rallis(rmap, monomial_symmetric(lam))
        image = cache[lam]
        pivot = image.coefficient(mu)
        coeff = residual.coefficient(mu) / pivot
        f = f + monomial_symmetric(lam).scale(coeff)
        residual = residual - image.scale(coeff)
    return f

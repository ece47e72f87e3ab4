"""Theta on supercuspidal supports.

A support is a multiset of (cuspidal symbol, unramified twist) pairs.  The
unramified character ``|.|^a`` is recorded as the parameter ``v^{2a}``; under
that convention the theta map sends

    (rho, t)  ->  (rho^vee, t^{-1} v^{-(n-m)})

and appends the ``n - m`` unramified parameters ``v^{2(i-n)+(n-1)}``,
``m < i <= n``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BadShape
from .fields import Specialization, specialize
from .rallis import constant_exponent
from .scalars import BaseScalar


@dataclass(frozen=True, order=True)
class CuspidalSymbol:
    label: str
    size: int = 1
    dual_label: str | None = None

    def __post_init__(self):
        if self.size < 1:
            raise BadShape("cuspidal symbol size must be positive")
        if self.dual_label is None:
            object.__setattr__(self, "dual_label", self.label)

    @property
    def dual(self) -> "CuspidalSymbol":
        return CuspidalSymbol(self.dual_label, self.size, self.label)

    def is_self_dual(self) -> bool:
        return self.label == self.dual_label


UNRAMIFIED = CuspidalSymbol("1", 1, "1")


@dataclass(frozen=True, order=True)
class UnramifiedTwist:
    """The unit ``coeff * v^vpow``."""

    vpow: int = 0
    coeff: Fraction = Fraction(1)

    def __post_init__(self):
        c = Fraction(self.coeff)
        if not c:
            raise ValueError("twist coefficient must be nonzero")
        object.__setattr__(self, "coeff", c)

    @classmethod
    def of(cls, x) -> "UnramifiedTwist":
        if isinstance(x, UnramifiedTwist):
            return x
        x = BaseScalar.coerce(x)
        if not x.is_monomial():
            raise ValueError(f"{x} is not a monomial unit")
        ((k, c),) = x.items()
        return cls(k, c)

    @property
    def scalar(self) -> BaseScalar:
        return BaseScalar.monomial(self.coeff, self.vpow)

    def __mul__(self, other):
        other = UnramifiedTwist.of(other)
        return UnramifiedTwist(self.vpow + other.vpow, self.coeff * other.coeff)

    __rmul__ = __mul__

    def inverse(self) -> "UnramifiedTwist":
        return UnramifiedTwist(-self.vpow, 1 / self.coeff)

    def __repr__(self):
        return f"Twist({self.scalar})"


@dataclass(frozen=True)
class Support:
    """Multiset of (symbol, twist) pairs, stored sorted for canonical equality."""

    elements: tuple = field(default=())

    def __post_init__(self):
        elems = tuple(
            sorted(
                ((s, UnramifiedTwist.of(t)) for s, t in self.elements),
                key=lambda p: (p[0].label, p[1].vpow, p[1].coeff, p[0].size),
            )
        )
        object.__setattr__(self, "elements", elems)

    @property
    def group_rank(self) -> int:
        return sum(s.size for s, _ in self.elements)

    def twists(self) -> list[BaseScalar]:
        return [t.scalar for _, t in self.elements]

    def is_unramified(self) -> bool:
        return all(s == UNRAMIFIED for s, _ in self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        body = ", ".join(f"({s.label!r}, {t.scalar})" for s, t in self.elements)
        return f"Support({{{body}}})"


def unramified_support(twists) -> Support:
    return Support(tuple((UNRAMIFIED, t) for t in twists))


def theta_support(s: Support, n: int) -> Support:
    m = s.group_rank
    if m > n:
        raise BadShape(f"support on G_{m} cannot go to G_{n}")
    shift = UnramifiedTwist(-(n - m))
    out = [(c.dual, t.inverse() * shift) for c, t in s.elements]
    out += [(UNRAMIFIED, UnramifiedTwist(constant_exponent(i, n))) for i in range(m + 1, n + 1)]
    return Support(tuple(out))


def trivial_rep_support(n: int) -> Support:
    """Support of the trivial representation of G_n: v^{n-1}, v^{n-3}, ..., v^{-(n-1)}."""
    if n < 1:
        raise BadShape("n must be positive")
    return unramified_support(UnramifiedTwist(n - 1 - 2 * j) for j in range(n))


def twist_support(s: Support, a) -> Support:
    a = UnramifiedTwist.of(a)
    return Support(tuple((c, t * a) for c, t in s.elements))


def support_equal(s1: Support, s2: Support, spec: Specialization | None = None) -> bool:
    if spec is None:
        return s1.elements == s2.elements
    c1 = Counter((c, specialize(t.scalar, spec)) for c, t in s1.elements)
    c2 = Counter((c, specialize(t.scalar, spec)) for c, t in s2.elements)
    return c1 == c2


def theta_inductive_check(m: int, k: int, n: int, s: Support) -> bool:
    """theta_{n,m}(s) == theta_{n,k}(theta_{k,k}(theta_{k,m}(s)))."""
    if not m <= k <= n:
        raise BadShape(f"need m <= k <= n, got {m}, {k}, {n}")
    if s.group_rank != m:
        raise BadShape(f"support has rank {s.group_rank}, expected {m}")
    direct = theta_support(s, n)
    chained = theta_support(theta_support(theta_support(s, k), k), n)
    return support_equal(direct, chained)

"""Base coefficient ring: Laurent polynomials in a formal square root ``v`` of q.

The symbol ``v`` is never reduced modulo ``v**2 - q``; every occurrence of
``q`` is written as ``v**2``.  Half-integral powers of ``q`` are therefore
plain integer powers of ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class RingContext:
    """Residual characteristic ``p`` and cardinality ``q = p**f``."""

    p: int
    f: int = 1

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.f < 1:
            raise ValueError(f"f={self.f} must be positive")

    @property
    def q(self) -> int:
        return self.p**self.f


class BaseScalar:
    """Element of Q[v, v^-1], stored as a sparse map ``exponent -> Fraction``.

    Instances are immutable and kept in canonical form (no zero coefficients),
    so equality of values is equality of term maps.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for k, c in items:
                c = Fraction(c)
                if c:
                    k = int(k)
                    s = clean.get(k, 0) + c
                    if s:
                        clean[k] = s
                    else:
                        clean.pop(k, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def coerce(cls, x) -> "BaseScalar":
        if isinstance(x, BaseScalar):
            return x
        if isinstance(x, (int, Rational)):
            return cls({0: x})
        raise TypeError(f"cannot coerce {type(x).__name__} to BaseScalar")

    @classmethod
    def monomial(cls, coeff, vpow: int) -> "BaseScalar":
        return cls({vpow: coeff})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """Terms sorted by increasing v-exponent."""
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    is_unit = is_monomial

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def vdegree_range(self) -> tuple[int, int]:
        if not self._terms:
            return (0, 0)
        return (min(self._terms), max(self._terms))

    def is_p_integral(self, p: int) -> bool:
        """True when every denominator is a power of ``p`` (coefficients in Z[1/p])."""
        for c in self._terms.values():
            d = c.denominator
            while d % p == 0:
                d //= p
            if d != 1:
                return False
        return True

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        try:
            other = BaseScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            t = tuple(sorted(self._terms.items()))
            # constants hash like the plain rational they equal
            self._hash = hash(t[0][1]) if len(t) == 1 and t[0][0] == 0 else hash(t)
            if not t:
                self._hash = hash(0)
        return self._hash

    def __neg__(self):
        return BaseScalar({k: -c for k, c in self._terms.items()})

    def __add__(self, other):
        try:
            other = BaseScalar.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return BaseScalar(out)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = BaseScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return BaseScalar.coerce(other) - self

    def __mul__(self, other):
        try:
            other = BaseScalar.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[int, Fraction] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
        return BaseScalar(out)

    __rmul__ = __mul__

    def inverse(self) -> "BaseScalar":
        if len(self._terms) != 1:
            raise ZeroDivisionError(f"{self} is not a unit of Q[v, 1/v]")
        ((k, c),) = self._terms.items()
        return BaseScalar({-k: 1 / c})

    def __truediv__(self, other):
        try:
            other = BaseScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return BaseScalar.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if len(self._terms) == 1:
            ((k, c),) = self._terms.items()
            return BaseScalar({k * e: c**e})
        out = BaseScalar({0: 1})
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __repr__(self):
        return f"BaseScalar({str(self)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k, c in sorted(self._terms.items(), reverse=True):
            if k == 0:
                parts.append(str(c))
                continue
            vp = "v" if k == 1 else f"v^{k}" if k > 0 else f"v^({k})"
            if c == 1:
                parts.append(vp)
            elif c == -1:
                parts.append("-" + vp)
            else:
                parts.append(f"{c}*{vp}")
        return " + ".join(parts).replace("+ -", "- ")


V = BaseScalar({1: 1})
ONE = BaseScalar({0: 1})
ZERO = BaseScalar()


def vpow(k: int) -> BaseScalar:
    return BaseScalar({k: 1})

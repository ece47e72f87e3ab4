"""Exact fields used for matrix work and specializations.

Four kinds are supported:

* ``QQ`` -- the rationals, elements are :class:`fractions.Fraction`;
* ``GF(ell)`` -- a prime field, and ``GF(ell, 2)`` its quadratic extension
  built on the smallest quadratic non-residue;
* ``QV`` -- univariate rational functions in the formal ``v``.

A :class:`Specialization` sends ``v`` to a chosen square root of ``q`` in a
finite field (or in ``QQ`` when ``q`` is a perfect square).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from numbers import Rational

from .errors import CharacteristicClash, InvalidSpecialization
from .scalars import BaseScalar, RingContext, is_prime


class RationalField:
    characteristic = 0
    kind = "qq"

    def __call__(self, x) -> Fraction:
        return Fraction(x)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def contains(self, x) -> bool:
        return isinstance(x, (int, Fraction))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


def smallest_nonresidue(ell: int) -> int:
    for r in range(2, ell):
        if pow(r, (ell - 1) // 2, ell) == ell - 1:
            return r
    raise ValueError(f"no quadratic non-residue mod {ell}")


class FiniteField:
    """``F_ell`` (degree 1) or ``F_{ell^2} = F_ell[t]/(t^2 - r)`` (degree 2)."""

    kind = "gf"

    def __init__(self, ell: int, degree: int = 1):
        if not is_prime(ell):
            raise ValueError(f"{ell} is not prime")
        if degree not in (1, 2):
            raise ValueError("only F_ell and F_ell^2 are supported")
        if degree == 2 and ell == 2:
            raise ValueError("F_4 is not needed: every element of F_2 is a square")
        self.ell = ell
        self.degree = degree
        self.nonresidue = smallest_nonresidue(ell) if degree == 2 else None

    @property
    def characteristic(self):
        return self.ell

    @property
    def order(self):
        return self.ell**self.degree

    def __call__(self, x) -> "GFElement":
        if isinstance(x, GFElement):
            if x.field != self:
                if x.field.ell == self.ell and x.b == 0:
                    return GFElement(self, x.a, 0)
                raise ValueError(f"{x} does not live in {self}")
            return x
        if isinstance(x, (tuple, list)):
            a, b = x
            if self.degree == 1 and b % self.ell:
                raise ValueError("prime field elements have no t-component")
            return GFElement(self, a, b)
        if isinstance(x, int):
            return GFElement(self, x, 0)
        if isinstance(x, Rational):
            x = Fraction(x)
            if x.denominator % self.ell == 0:
                raise ZeroDivisionError(f"{x} has denominator divisible by {self.ell}")
            return GFElement(self, x.numerator * pow(x.denominator, -1, self.ell), 0)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self}")

    @property
    def zero(self):
        return GFElement(self, 0, 0)

    @property
    def one(self):
        return GFElement(self, 1, 0)

    @property
    def gen(self):
        """The adjoined square root ``t`` of the non-residue."""
        if self.degree != 2:
            raise ValueError("prime field has no extension generator")
        return GFElement(self, 0, 1)

    def elements(self):
        for b in range(self.ell if self.degree == 2 else 1):
            for a in range(self.ell):
                yield GFElement(self, a, b)

    def sqrt(self, x):
        """Some square root of ``x`` in this field, or ``None``."""
        x = self(x)
        for y in self.elements():
            if y * y == x:
                return y
        return None

    def contains(self, x) -> bool:
        return isinstance(x, GFElement) and x.field == self

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.ell, self.degree) == (other.ell, other.degree)

    def __hash__(self):
        return hash(("GF", self.ell, self.degree))

    def __repr__(self):
        return f"GF({self.ell})" if self.degree == 1 else f"GF({self.ell}^2)"


def GF(ell: int, degree: int = 1) -> FiniteField:
    return FiniteField(ell, degree)


class GFElement:
    """``a + b*t`` in F_ell or F_{ell^2}; ``b`` is 0 in the prime field."""

    __slots__ = ("field", "a", "b")

    def __init__(self, field: FiniteField, a: int, b: int = 0):
        self.field = field
        self.a = a % field.ell
        self.b = b % field.ell

    def _lift(self, other):
        if isinstance(other, GFElement):
            if other.field is self.field or other.field == self.field:
                return other
            if other.field.ell == self.ell_ and other.b == 0:
                return GFElement(self.field, other.a)
            raise ValueError(f"mixed fields {self.field} and {other.field}")
        return self.field(other)

    @property
    def ell_(self):
        return self.field.ell

    def __eq__(self, other):
        if isinstance(other, GFElement):
            return self.field.ell == other.field.ell and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Rational)):
            try:
                o = self.field(other)
            except ZeroDivisionError:
                return False
            return self.a == o.a and self.b == o.b
        return NotImplemented

    def __hash__(self):
        return hash((self.field.ell, self.a, self.b))

    def __bool__(self):
        return bool(self.a or self.b)

    def __neg__(self):
        return GFElement(self.field, -self.a, -self.b)

    def __add__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return GFElement(self.field, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return GFElement(self.field, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        F = self.field
        if F.degree == 1:
            return GFElement(F, self.a * o.a)
        r = F.nonresidue
        return GFElement(F, self.a * o.a + r * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def norm(self) -> int:
        F = self.field
        if F.degree == 1:
            return self.a
        return (self.a * self.a - F.nonresidue * self.b * self.b) % F.ell

    def inverse(self) -> "GFElement":
        if not self:
            raise ZeroDivisionError("division by zero in finite field")
        F = self.field
        ninv = pow(self.norm(), -1, F.ell)
        if F.degree == 1:
            return GFElement(F, ninv)
        # 1/(a + bt) = (a - bt)/(a^2 - r b^2)
        return GFElement(F, self.a * ninv, -self.b * ninv)

    def __truediv__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.field.one
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __str__(self):
        if self.field.degree == 1 or not self.b:
            return str(self.a)
        return f"{self.a}+{self.b}t"

    def __repr__(self):
        if self.field.degree == 1:
            return f"{self.a} (mod {self.field.ell})"
        return f"{self.a}+{self.b}t (mod {self.field.ell}, t^2={self.field.nonresidue})"


# -- univariate polynomials over Q, coefficient tuples in increasing degree --

def _trim(c):
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _padd(a, b):
    n = max(len(a), len(b))
    return _trim(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def _pneg(a):
    return tuple(-x for x in a)


def _pdivmod(a, b):
    a = list(a)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] / lead
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] -= c * y
        a = list(_trim(a))
    return _trim(q), _trim(a)


def _primitive(c):
    """Integer primitive part of a rational coefficient tuple (positive lead)."""
    den = 1
    for x in c:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in c]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if ints[-1] < 0:
        g = -g
    return [x // g for x in ints]


def _prem(a, b):
    """Pseudo-remainder of integer polynomials."""
    a = list(a)
    lb, db = b[-1], len(b) - 1
    while len(a) - 1 >= db and a:
        k = len(a) - 1 - db
        la = a[-1]
        a = [x * lb for x in a]
        for i, y in enumerate(b):
            a[i + k] -= la * y
        while a and not a[-1]:
            a.pop()
    return a


def _pgcd(a, b):
    """Monic gcd over Q via the primitive Euclidean algorithm over Z."""
    if not a:
        a, b = b, a
    if not a:
        return ()
    a = _primitive(a)
    if not b:
        lead = a[-1]
        return tuple(Fraction(x, lead) for x in a)
    b = _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return (Fraction(1),)
        r = _prem(a, b)
        a, b = b, (_primitive(r) if r else [])
    lead = a[-1]
    return tuple(Fraction(x, lead) for x in a)


class RationalFunction:
    """Element of Q(v): ``num/den`` reduced, with ``den`` monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(1,)):
        num = _trim(Fraction(x) for x in num)
        den = _trim(Fraction(x) for x in den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = (), (Fraction(1),)
            return
        g = _pgcd(num, den)
        if len(g) > 1:
            num = _pdivmod(num, g)[0]
            den = _pdivmod(den, g)[0]
        lead = den[-1]
        self.num = tuple(x / lead for x in num)
        self.den = tuple(x / lead for x in den)

    @classmethod
    def from_scalar(cls, x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, (int, Rational)):
            return cls((x,))
        if isinstance(x, BaseScalar):
            if x.is_zero():
                return cls(())
            lo, hi = x.vdegree_range()
            shift = min(lo, 0)
            num = [Fraction(0)] * (hi - shift + 1)
            for k, c in x.items():
                num[k - shift] = c
            den = [Fraction(0)] * (-shift) + [Fraction(1)]
            return cls(num, den)
        raise TypeError(f"cannot coerce {type(x).__name__} into Q(v)")

    def _lift(self, other):
        return RationalFunction.from_scalar(other)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.den == (1,) and len(self.num) <= 1:
            return hash(self.num[0] if self.num else 0)
        return hash((self.num, self.den))

    def __neg__(self):
        return RationalFunction(_pneg(self.num), self.den)

    def __add__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(_padd(self.num, o.num), self.den)
        return RationalFunction(
            _padd(_pmul(self.num, o.den), _pmul(o.num, self.den)), _pmul(self.den, o.den)
        )

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return RationalFunction(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("division by zero in Q(v)")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = RationalFunction((1,))
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __call__(self, x):
        """Evaluate at ``v = x`` in any field accepting Fraction coercion."""
        def ev(c):
            acc = 0
            for a in reversed(c):
                acc = acc * x + a
            return acc
        return ev(self.num) / ev(self.den)

    def __repr__(self):
        def fmt(c):
            terms = []
            for k in range(len(c) - 1, -1, -1):
                a = c[k]
                if not a:
                    continue
                mono = "" if k == 0 else ("v" if k == 1 else f"v^{k}")
                coef = str(abs(a))
                body = coef if not mono else (mono if abs(a) == 1 else f"{coef}*{mono}")
                sign = "-" if a < 0 else "+"
                terms.append((sign, body))
            if not terms:
                return "0"
            out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
            for sign, body in terms[1:]:
                out += f" {sign} {body}"
            return out
        if self.den == (1,):
            return fmt(self.num)
        return f"({fmt(self.num)})/({fmt(self.den)})"


def evaluate_in_qv(f, values) -> RationalFunction:
    """Evaluate a Laurent polynomial over Q[v, 1/v] at points of Q(v).

    Every term is brought over the common denominator
    ``v^s * prod_i (N_i D_i)^{E_i}`` so the sum needs a single reduction.
    """
    values = [RationalFunction.from_scalar(x) for x in values]
    terms = f.items()
    if not terms:
        return RationalFunction(())
    n = len(values)
    E = [max(abs(e[i]) for e, _ in terms) for i in range(n)]
    s = -min(min(k for k, _ in c.items()) for _, c in terms)
    s = max(s, 0)

    def powers(p, top):
        out = [(Fraction(1),)]
        for _ in range(2 * top):
            out.append(_pmul(out[-1], p))
        return out

    Np = [powers(x.num, E[i]) for i, x in enumerate(values)]
    Dp = [powers(x.den, E[i]) for i, x in enumerate(values)]
    total = ()
    for e, c in terms:
        lo, hi = c.vdegree_range()
        poly = [Fraction(0)] * (hi + s + 1)
        for k, a in c.items():
            poly[k + s] = a
        t = _trim(poly)
        for i, k in enumerate(e):
            t = _pmul(t, _pmul(Np[i][E[i] + k], Dp[i][E[i] - k]))
        total = _padd(total, t)
    den = (Fraction(0),) * s + (Fraction(1),)
    for i in range(n):
        den = _pmul(den, _pmul(Np[i][E[i]], Dp[i][E[i]]))
    return RationalFunction(total, den)


class RationalFunctionField:
    characteristic = 0
    kind = "qv"

    def __call__(self, x) -> RationalFunction:
        return RationalFunction.from_scalar(x)

    @property
    def zero(self):
        return RationalFunction(())

    @property
    def one(self):
        return RationalFunction((1,))

    @property
    def v(self):
        return RationalFunction((0, 1))

    def embed(self, x: BaseScalar) -> RationalFunction:
        return RationalFunction.from_scalar(x)

    def contains(self, x) -> bool:
        return isinstance(x, RationalFunction)

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField)

    def __hash__(self):
        return hash("QV")

    def __repr__(self):
        return "QV"


QV = RationalFunctionField()


@dataclass(frozen=True)
class Specialization:
    """Ring map Q[v, 1/v] -> target sending v to ``v_image`` with v_image^2 = q."""

    ctx: RingContext
    target: object
    v_image: object

    def __post_init__(self):
        t = self.target
        if t.characteristic == self.ctx.p:
            raise CharacteristicClash(
                f"target characteristic {t.characteristic} equals p={self.ctx.p}"
            )
        if t.characteristic == 0 and not isinstance(t, RationalField):
            raise InvalidSpecialization(f"unsupported specialization target {t!r}")
        v = t(self.v_image)
        object.__setattr__(self, "v_image", v)
        if v * v != t(self.ctx.q):
            raise InvalidSpecialization(f"v_image^2 = {v * v!r} is not q = {self.ctx.q} in {t!r}")

    @classmethod
    def auto(cls, ctx: RingContext, ell: int) -> "Specialization":
        """Smallest square root of q in F_ell, else in F_{ell^2}."""
        base = GF(ell)
        if ell == ctx.p:
            raise CharacteristicClash(f"ell={ell} equals p")
        root = base.sqrt(ctx.q)
        if root is not None:
            return cls(ctx, base, root)
        ext = GF(ell, 2)
        return cls(ctx, ext, ext.sqrt(ctx.q))

    def __call__(self, x):
        return specialize(x, self)


def specialize(x, s: Specialization):
    """Image of the base scalar ``x`` under ``v -> s.v_image``."""
    x = BaseScalar.coerce(x)
    t = s.target
    out = t.zero
    for k, c in x.items():
        out = out + t(c) * s.v_image**k
    return out

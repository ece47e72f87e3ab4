"""Sparse multivariate Laurent polynomials in X_1..X_n over :class:`BaseScalar`."""

from __future__ import annotations

from itertools import permutations
from numbers import Rational

from .errors import ArityMismatch
from .fields import RationalFunction, evaluate_in_qv
from .scalars import BaseScalar


class LaurentPoly:
    """Immutable Laurent polynomial; ``terms`` maps exponent tuples to BaseScalar."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean: dict[tuple, BaseScalar] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for e, c in items:
                e = tuple(int(x) for x in e)
                if len(e) != nvars:
                    raise ArityMismatch(f"exponent {e} has length {len(e)}, expected {nvars}")
                c = BaseScalar.coerce(c)
                if c:
                    s = clean[e] + c if e in clean else c
                    if s:
                        clean[e] = s
                    else:
                        del clean[e]
        self._terms = clean
        self._hash = None

    @classmethod
    def constant(cls, c, nvars: int) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, i: int, nvars: int) -> "LaurentPoly":
        """The variable X_{i+1} (0-based index ``i``)."""
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, exp, coeff=1) -> "LaurentPoly":
        return cls(len(exp), {tuple(exp): coeff})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ArityMismatch(f"{self.nvars} vs {other.nvars} variables")
            return other
        if isinstance(other, (int, Rational, BaseScalar)):
            return LaurentPoly.constant(other, self.nvars)
        raise TypeError(type(other).__name__)

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except (TypeError, ArityMismatch):
            return NotImplemented if not isinstance(other, LaurentPoly) else False
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __neg__(self):
        return LaurentPoly(self.nvars, {e: -c for e, c in self._terms.items()})

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out[e] + c if e in out else c
        return LaurentPoly(self.nvars, out)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[tuple, BaseScalar] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                out[e] = out[e] + c if e in out else c
        return LaurentPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) != 1:
                raise ZeroDivisionError("only monomials with unit coefficient are invertible")
            ((e, c),) = self._terms.items()
            return LaurentPoly(self.nvars, {tuple(x * k for x in e): c**k})
        out = LaurentPoly.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "LaurentPoly":
        c = BaseScalar.coerce(c)
        return LaurentPoly(self.nvars, {e: c * x for e, x in self._terms.items()})

    def permute(self, perm) -> "LaurentPoly":
        """Apply sigma with X_i -> X_{perm[i]} (0-based)."""
        out = {}
        for e, c in self._terms.items():
            new = [0] * self.nvars
            for i, x in enumerate(e):
                new[perm[i]] = x
            out[tuple(new)] = c
        return LaurentPoly(self.nvars, out)

    def swap(self, i: int, j: int) -> "LaurentPoly":
        perm = list(range(self.nvars))
        perm[i], perm[j] = j, i
        return self.permute(perm)

    def is_symmetric(self) -> bool:
        """Invariance under the adjacent transpositions, which generate S_n."""
        return all(self.swap(i, i + 1) == self for i in range(self.nvars - 1))

    def max_degree(self) -> int:
        """Largest absolute value of any exponent entry."""
        return max((abs(x) for e in self._terms for x in e), default=0)

    def coefficient(self, exp) -> BaseScalar:
        return self._terms.get(tuple(exp), BaseScalar())

    def substitute(self, images) -> "LaurentPoly":
        """Homomorphism sending X_i to ``images[i]`` (Laurent polys in a common arity)."""
        if len(images) != self.nvars:
            raise ArityMismatch(f"need {self.nvars} images, got {len(images)}")
        target = images[0].nvars if images else 0
        mono = all(len(im) == 1 for im in images)
        if mono:
            # every image is c_i * X^{d_i}; no expansion needed
            data = [next(iter(im._terms.items())) for im in images]
            out: dict[tuple, BaseScalar] = {}
            for e, c in self._terms.items():
                exp = [0] * target
                coeff = c
                for (d, ci), k in zip(data, e):
                    if k:
                        coeff = coeff * ci**k
                        for j, x in enumerate(d):
                            exp[j] += x * k
                t = tuple(exp)
                out[t] = out[t] + coeff if t in out else coeff
            return LaurentPoly(target, out)
        acc = LaurentPoly(target)
        for e, c in self._terms.items():
            term = LaurentPoly.constant(c, target)
            for im, k in zip(images, e):
                if k:
                    term = term * im**k
            acc = acc + term
        return acc

    def evaluate(self, values, embed=None):
        """Value at ``X_i = values[i]``; ``embed`` maps BaseScalar coefficients
        into the values' ring (identity by default)."""
        if len(values) != self.nvars:
            raise ArityMismatch(f"need {self.nvars} values, got {len(values)}")
        if values and all(isinstance(x, RationalFunction) for x in values):
            return evaluate_in_qv(self, values)
        acc = None
        for e, c in self._terms.items():
            t = embed(c) if embed else c
            for x, k in zip(values, e):
                if k:
                    t = t * x**k
            acc = t if acc is None else acc + t
        if acc is None:
            return embed(BaseScalar()) if embed else BaseScalar()
        return acc

    def __repr__(self):
        return f"LaurentPoly({self.nvars}, {str(self)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            mono = "*".join(
                f"X{i + 1}" if x == 1 else f"X{i + 1}^{x}" if x > 0 else f"X{i + 1}^({x})"
                for i, x in enumerate(e)
                if x
            )
            cs = str(c)
            if not mono:
                parts.append(cs if len(c.terms) == 1 or len(self._terms) == 1 else f"({cs})")
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)


def _distinct_perms(exp):
    return set(permutations(exp))


def symmetrize(f: LaurentPoly, n: int | None = None) -> LaurentPoly:
    """Orbit sum, extended linearly: each term ``c*X^e`` becomes ``c`` times the
    sum of the distinct permutations of ``X^e`` (no stabilizer multiplicity)."""
    if n is not None and n != f.nvars:
        raise ArityMismatch(f"polynomial has {f.nvars} variables, not {n}")
    out: dict[tuple, BaseScalar] = {}
    for e, c in f.items():
        for p in _distinct_perms(e):
            out[p] = out[p] + c if p in out else c
    return LaurentPoly(f.nvars, out)


def monomial_symmetric(exp, nvars: int | None = None) -> LaurentPoly:
    """m_lambda: sum over the distinct permutations of ``exp``."""
    exp = tuple(exp)
    return LaurentPoly(len(exp), {p: 1 for p in _distinct_perms(exp)})


def elementary(k: int, nvars: int) -> LaurentPoly:
    """Elementary symmetric polynomial e_k(X_1..X_n)."""
    return monomial_symmetric((1,) * k + (0,) * (nvars - k))

"""Seeded random generators for property checks.

All generators take a :class:`random.Random` so that runs are reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .fields import QV, FiniteField, RationalFunction
from .laurent import LaurentPoly, symmetrize
from .linalg import Matrix
from .scalars import BaseScalar, RingContext
from .supports import UNRAMIFIED, CuspidalSymbol, Support, UnramifiedTwist, trivial_rep_support, twist_support
from .tame import TameParam, check_tame


def random_rational(rng: random.Random, size: int = 5, nonzero: bool = False) -> Fraction:
    while True:
        x = Fraction(rng.randint(-size, size), rng.randint(1, size))
        if x or not nonzero:
            return x


def random_scalar(rng: random.Random, vrange: int = 3, terms: int = 2) -> BaseScalar:
    return BaseScalar({rng.randint(-vrange, vrange): random_rational(rng) for _ in range(terms)})


def random_unit(rng: random.Random, vrange: int = 3) -> BaseScalar:
    return BaseScalar.monomial(random_rational(rng, nonzero=True), rng.randint(-vrange, vrange))


def random_laurent(rng: random.Random, nvars: int, nterms: int = 3, deg: int = 2, symmetric: bool = False) -> LaurentPoly:
    terms = {}
    for _ in range(nterms):
        e = tuple(rng.randint(-deg, deg) for _ in range(nvars))
        terms[e] = random_scalar(rng)
    f = LaurentPoly(nvars, terms)
    return symmetrize(f) if symmetric else f


def random_rf(rng: random.Random, deg: int = 2) -> RationalFunction:
    """Nonzero element of Q(v) with small numerator and denominator."""
    while True:
        num = [rng.randint(-3, 3) for _ in range(deg + 1)]
        den = [rng.randint(-3, 3) for _ in range(deg)] + [1]
        if any(num):
            return RationalFunction(num, den)


def random_element(rng: random.Random, field, nonzero: bool = False):
    if field is QV:
        return random_rf(rng)
    if isinstance(field, FiniteField):
        while True:
            x = field((rng.randrange(field.ell), rng.randrange(field.ell) if field.degree == 2 else 0))
            if x or not nonzero:
                return x
    return field(random_rational(rng, nonzero=nonzero))


def random_matrix(rng: random.Random, field, d: int) -> Matrix:
    return Matrix(field, [[random_element(rng, field) for _ in range(d)] for _ in range(d)])


def random_invertible(rng: random.Random, field, d: int) -> Matrix:
    while True:
        M = random_matrix(rng, field, d)
        if M.is_invertible():
            return M


def _periodic_cycles(field: FiniteField, q: int):
    """Cycles of x -> x^q on the nonzero elements of a finite field."""
    cycles, seen = [], set()
    for x in field.elements():
        if not x or x in seen:
            continue
        orbit, y = [], x
        while y not in orbit:
            orbit.append(y)
            y = y**q
        cyc = orbit[orbit.index(y):]
        if y not in seen:
            cycles.append(cyc)
            seen.update(cyc)
    return cycles


def random_tame_pair(rng: random.Random, field: FiniteField, ctx: RingContext, d: int) -> TameParam:
    """A random (F, sigma) with F sigma F^{-1} = sigma^q in GL_d(field).

    sigma is assembled from eigenvalue cycles of x -> x^q (optionally with a
    unipotent 2x2 block on a fixed point); F permutes the eigenspaces
    backwards along each cycle with random invertible blocks.  Both are then
    conjugated by a random g.
    """
    q = ctx.q
    cycles = _periodic_cycles(field, q)
    zero = field.zero
    while True:
        blocks_s, blocks_f = [], []
        left = d
        while left:
            cyc = rng.choice(cycles)
            c = len(cyc)
            if c == 1 and left >= 2 and rng.random() < 0.3:
                s = cyc[0]
                a = random_element(rng, field, nonzero=True)
                blocks_s.append([[s, s], [zero, s]])
                blocks_f.append([[a * q, zero], [zero, a]])
                left -= 2
                continue
            r_max = left // c
            if r_max == 0:
                continue
            r = rng.randint(1, r_max)
            size = c * r
            S = [[zero] * size for _ in range(size)]
            Fm = [[zero] * size for _ in range(size)]
            for i in range(c):
                for k in range(r):
                    S[i * r + k][i * r + k] = cyc[i]
                # F maps eigenspace i onto eigenspace i-1
                B = random_invertible(rng, field, r)
                j = (i - 1) % c
                for a in range(r):
                    for b in range(r):
                        Fm[j * r + a][i * r + b] = B[a, b]
            blocks_s.append(S)
            blocks_f.append(Fm)
            left -= size
        sigma = Matrix.block_diag(*(Matrix(field, b) for b in blocks_s))
        frob = Matrix.block_diag(*(Matrix(field, b) for b in blocks_f))
        g = random_invertible(rng, field, d)
        P = TameParam(frob, sigma, ctx).conjugate(g)
        if check_tame(P):
            return P


def twist_family(max_rank: int = 4, max_shift: int = 6):
    """trivial_rep_support(m) twisted by v^k, |k| <= max_shift, m <= max_rank."""
    out = []
    for m in range(1, max_rank + 1):
        base = trivial_rep_support(m)
        for k in range(-max_shift, max_shift + 1):
            out.append(twist_support(base, BaseScalar.monomial(1, k)))
    return out


def random_support(rng: random.Random, m: int, labels=("1", "rho", "tau")) -> Support:
    """Random support of rank m mixing unramified and sized cuspidal symbols."""
    elems, left = [], m
    while left:
        lab = rng.choice(labels)
        if lab == "1":
            sym = UNRAMIFIED
        else:
            size = rng.randint(1, left)
            sym = CuspidalSymbol(lab, size, lab + "~")
        left -= sym.size
        elems.append((sym, UnramifiedTwist(rng.randint(-4, 4), random_rational(rng, nonzero=True))))
    return Support(tuple(elems))

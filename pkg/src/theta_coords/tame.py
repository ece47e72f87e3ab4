"""Tame Langlands parameters (F, sigma) with F sigma F^{-1} = sigma^q.

``l_theta`` is the block-matrix transfer

    F'     = diag(v^{-(n-m)} * F^{-T},  v^{2(m+1-n)+(n-1)}, ..., v^{n-1})
    sigma' = diag(sigma^{-T}, I_{n-m})

and the coordinates on the quotient by conjugation are the characteristic
polynomial coefficients of word values.  Pulling those coordinates back
along ``l_theta`` is exact division by the scalar-block factor.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from itertools import product

from .errors import BadShape, MissingSqrtQ, NotDiagonal
from .fields import FiniteField, RationalFunctionField, Specialization
from .linalg import Matrix, charpoly, divide_exact, poly_from_roots
from .rallis import constant_exponent, point_image
from .scalars import RingContext


class Letter(enum.Enum):
    FROB = "F"
    GEN = "S"


class Word(tuple):
    """Nonempty word in the letters FROB and GEN."""

    def __new__(cls, letters):
        if isinstance(letters, str):
            # "F" is Frobenius; "S", "G" or "s" the tame generator
            letters = [Letter.FROB if ch in "Ff" else Letter.GEN for ch in letters if not ch.isspace()]
        letters = tuple(x if isinstance(x, Letter) else Letter(x) for x in letters)
        if not letters:
            raise ValueError("words must be nonempty")
        return super().__new__(cls, letters)

    @property
    def frob_count(self) -> int:
        return sum(1 for x in self if x is Letter.FROB)

    def __str__(self):
        return "".join(x.value for x in self)

    def __repr__(self):
        return f"Word({str(self)!r})"


def all_words(max_len: int):
    """Every word of length 1..max_len, shortest first."""
    for k in range(1, max_len + 1):
        for w in product((Letter.FROB, Letter.GEN), repeat=k):
            yield Word(w)


@dataclass(frozen=True)
class TameParam:
    frob: Matrix
    gen: Matrix
    ctx: RingContext

    def __post_init__(self):
        if self.frob.dim != self.gen.dim:
            raise BadShape("F and sigma must have the same size")

    @property
    def dim(self) -> int:
        return self.frob.dim

    @property
    def field(self):
        return self.frob.field

    def conjugate(self, g: Matrix) -> "TameParam":
        gi = g.inverse()
        return TameParam(g @ self.frob @ gi, g @ self.gen @ gi, self.ctx)


def check_tame(P: TameParam) -> bool:
    F, s = P.frob, P.gen
    return F @ s @ F.inverse() == s ** P.ctx.q


def _sqrt_q(field, spec: Specialization | None):
    if isinstance(field, RationalFunctionField):
        return field.v
    if spec is not None:
        if spec.target == field:
            return spec.v_image
        if isinstance(field, FiniteField) and spec.target.characteristic == field.characteristic:
            if spec.v_image.b == 0 or field.degree == 2:
                return field((spec.v_image.a, spec.v_image.b))
        raise MissingSqrtQ(f"specialization targets {spec.target!r}, parameter lives in {field!r}")
    raise MissingSqrtQ(f"{field!r} has no chosen square root of q; pass a Specialization")


def scalar_blocks(m: int, n: int, v) -> list:
    """Diagonal constants v^{2(i-n)+(n-1)}, m < i <= n, of the transferred Frobenius."""
    return [v ** constant_exponent(i, n) for i in range(m + 1, n + 1)]


def twisted_transpose(P: TameParam, n: int, v) -> tuple[Matrix, Matrix]:
    """The source-side pair (v^{-(n-m)} F^{-T}, sigma^{-T})."""
    m = P.dim
    return P.frob.transpose().inverse().scale(v ** (-(n - m))), P.gen.transpose().inverse()


def l_theta(P: TameParam, n: int, spec: Specialization | None = None) -> TameParam:
    m = P.dim
    if m > n:
        raise BadShape(f"cannot transfer dimension {m} to {n}")
    field = P.field
    v = _sqrt_q(field, spec)
    F0, s0 = twisted_transpose(P, n, v)
    D = Matrix.diag(field, scalar_blocks(m, n, v))
    frob = Matrix.block_diag(F0, D) if n > m else F0
    gen = Matrix.block_diag(s0, Matrix.identity(field, n - m)) if n > m else s0
    return TameParam(frob, gen, P.ctx)


def word_value(F: Matrix, s: Matrix, w: Word) -> Matrix:
    out = None
    for x in w:
        M = F if x is Letter.FROB else s
        out = M if out is None else out @ M
    return out


@dataclass(frozen=True)
class InvariantVector:
    """Characteristic-polynomial coefficients (c_0, ..., c_n) of a word value."""

    word: Word
    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs or self.coeffs[-1] != 1:
            raise ValueError("invariant vectors are monic")

    @property
    def dim(self) -> int:
        return len(self.coeffs) - 1


def word_invariants(P: TameParam, word) -> InvariantVector:
    word = Word(word)
    return InvariantVector(word, charpoly(word_value(P.frob, P.gen, word)))


def pullback_coefficients(pushed: InvariantVector, alpha1: int | None = None, scalar_blocks=()) -> InvariantVector:
    """Recover the dim-m invariant vector from its pushforward.

    ``scalar_blocks`` is either the diagonal constants d_j of the transferred
    Frobenius or a general invertible matrix A; the known factor is
    det(X - A^{alpha1}).  Raises NonzeroRemainder when ``pushed`` is not a
    pushforward.
    """
    if alpha1 is None:
        alpha1 = pushed.word.frob_count
    one = pushed.coeffs[-1]
    if isinstance(scalar_blocks, Matrix):
        factor = charpoly(scalar_blocks ** alpha1) if scalar_blocks.dim else (one,)
    else:
        factor = poly_from_roots([d ** alpha1 for d in scalar_blocks], one)
    return InvariantVector(pushed.word, divide_exact(pushed.coeffs, factor))


def satake_crosscheck(F_m: Matrix, n: int, ctx: RingContext | None = None, spec: Specialization | None = None) -> bool:
    """Diagonal of l_theta((F_m, I), n) agrees with point_image(diag F_m, n) as multisets."""
    if not F_m.is_diagonal():
        raise NotDiagonal("Frobenius must be diagonal")
    field = F_m.field
    ctx = ctx or RingContext(2)
    P = TameParam(F_m, Matrix.identity(field, F_m.dim), ctx)
    image = l_theta(P, n, spec)
    v = _sqrt_q(field, spec)
    pts = point_image(list(F_m.diagonal()), n, v=v)
    return image.frob.is_diagonal() and Counter(image.frob.diagonal()) == pts.multiset()


__all__ = [
    "Letter",
    "Word",
    "all_words",
    "TameParam",
    "InvariantVector",
    "check_tame",
    "l_theta",
    "scalar_blocks",
    "twisted_transpose",
    "word_value",
    "word_invariants",
    "pullback_coefficients",
    "satake_crosscheck",
]

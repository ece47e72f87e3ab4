"""JSON encoding of the toolkit's values.

Rationals travel as decimal strings (``num``/``den``) and powers of the
formal square root of q as the integer ``vpow``.  Every encoder emits a
canonical ordering so that equal values serialize to identical bytes.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import SchemaError
from .fields import GF, QQ, QV, FiniteField, RationalField, RationalFunction, RationalFunctionField
from .laurent import LaurentPoly
from .linalg import Matrix
from .scalars import BaseScalar, RingContext
from .supports import CuspidalSymbol, Support, UnramifiedTwist
from .tame import InvariantVector, TameParam, Word


def _int(x, what="integer") -> int:
    if isinstance(x, bool):
        raise SchemaError(f"{what}: expected integer, got bool")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x)
        except ValueError:
            pass
    raise SchemaError(f"{what}: expected integer, got {x!r}")


def _need(d, key, what):
    if not isinstance(d, dict):
        raise SchemaError(f"{what}: expected object, got {type(d).__name__}")
    if key not in d:
        raise SchemaError(f"{what}: missing field {key!r}")
    return d[key]


def rational_to_json(x: Fraction) -> dict:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def rational_from_json(d) -> Fraction:
    num = _int(_need(d, "num", "rational"), "num")
    den = _int(d.get("den", "1"), "den")
    if den == 0:
        raise SchemaError("zero denominator")
    return Fraction(num, den)


def term_to_json(coeff: Fraction, vpow: int) -> dict:
    return {**rational_to_json(coeff), "vpow": vpow}


def scalar_to_json(x: BaseScalar) -> list:
    return [term_to_json(c, k) for k, c in x.items()]


def scalar_from_json(d) -> BaseScalar:
    if isinstance(d, dict):
        d = [d]
    if isinstance(d, (int, str)):
        return BaseScalar.coerce(Fraction(d))
    if not isinstance(d, list):
        raise SchemaError(f"scalar: expected list of terms, got {d!r}")
    out = BaseScalar()
    for t in d:
        out = out + BaseScalar.monomial(rational_from_json(t), _int(t.get("vpow", 0), "vpow"))
    return out


def poly_to_json(f: LaurentPoly) -> dict:
    terms = []
    for e, c in f.items():
        for k, a in c.items():
            terms.append({"exp": list(e), "coeff": term_to_json(a, k)})
    return {"vars": f.nvars, "terms": terms}


def poly_from_json(d) -> LaurentPoly:
    n = _int(_need(d, "vars", "PolyJSON"), "vars")
    terms = _need(d, "terms", "PolyJSON")
    if not isinstance(terms, list):
        raise SchemaError("PolyJSON.terms must be a list")
    acc: dict[tuple, BaseScalar] = {}
    for t in terms:
        exp = _need(t, "exp", "term")
        if not isinstance(exp, list) or len(exp) != n:
            raise SchemaError(f"exponent {exp!r} must be a list of length {n}")
        e = tuple(_int(x, "exponent") for x in exp)
        c = _need(t, "coeff", "term")
        s = BaseScalar.monomial(rational_from_json(c), _int(c.get("vpow", 0), "vpow"))
        acc[e] = acc[e] + s if e in acc else s
    return LaurentPoly(n, acc)


def twist_to_json(t: UnramifiedTwist) -> dict:
    return term_to_json(t.coeff, t.vpow)


def twist_from_json(d) -> UnramifiedTwist:
    try:
        return UnramifiedTwist(_int(d.get("vpow", 0), "vpow"), rational_from_json(d))
    except ValueError as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(str(exc)) from exc


def symbol_to_json(s: CuspidalSymbol) -> dict:
    return {"label": s.label, "size": s.size, "dual": s.dual_label}


def symbol_from_json(d) -> CuspidalSymbol:
    if isinstance(d, str):
        return CuspidalSymbol(d)
    label = _need(d, "label", "symbol")
    if not isinstance(label, str):
        raise SchemaError("symbol label must be a string")
    return CuspidalSymbol(label, _int(d.get("size", 1), "size"), d.get("dual", label))


def support_to_json(s: Support) -> dict:
    elems = sorted(
        s.elements,
        key=lambda p: (p[0].label, p[1].vpow, p[1].coeff.numerator, p[1].coeff.denominator),
    )
    return {
        "rank": s.group_rank,
        "elements": [{"symbol": symbol_to_json(c), "twist": twist_to_json(t)} for c, t in elems],
    }


def support_from_json(d) -> Support:
    elems = _need(d, "elements", "support")
    if not isinstance(elems, list):
        raise SchemaError("support.elements must be a list")
    return Support(
        tuple((symbol_from_json(_need(e, "symbol", "element")), twist_from_json(_need(e, "twist", "element"))) for e in elems)
    )


# -- fields, elements, matrices --

def field_to_json(F) -> dict:
    if isinstance(F, FiniteField):
        return {"kind": "gf", "ell": F.ell, "degree": F.degree}
    if isinstance(F, RationalFunctionField):
        return {"kind": "qv"}
    if isinstance(F, RationalField):
        return {"kind": "qq"}
    raise TypeError(F)


def field_from_json(d):
    kind = _need(d, "kind", "field")
    if kind == "gf":
        try:
            return GF(_int(_need(d, "ell", "field"), "ell"), _int(d.get("degree", 1), "degree"))
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc
    if kind == "qq":
        return QQ
    if kind == "qv":
        return QV
    raise SchemaError(f"unknown field kind {kind!r}")


def element_to_json(x, F):
    if isinstance(F, FiniteField):
        return x.a if F.degree == 1 else [x.a, x.b]
    if isinstance(F, RationalFunctionField):
        return {"num": [rational_to_json(c) for c in x.num], "den": [rational_to_json(c) for c in x.den]}
    return rational_to_json(x)


def element_from_json(d, F):
    if isinstance(F, FiniteField):
        if isinstance(d, list):
            if len(d) != 2:
                raise SchemaError("F_ell^2 elements are [a, b]")
            try:
                return F((_int(d[0]), _int(d[1])))
            except ValueError as exc:
                raise SchemaError(str(exc)) from exc
        return F(_int(d, "element"))
    if isinstance(F, RationalFunctionField):
        num = [rational_from_json(c) for c in _need(d, "num", "Q(v) element")]
        den = [rational_from_json(c) for c in d.get("den", [{"num": "1"}])]
        try:
            return RationalFunction(num, den)
        except ZeroDivisionError as exc:
            raise SchemaError(str(exc)) from exc
    if isinstance(d, (int, str)):
        return Fraction(d)
    return rational_from_json(d)


def rows_to_json(M: Matrix) -> list:
    return [[element_to_json(x, M.field) for x in r] for r in M.rows]


def matrix_from_json(rows, F) -> Matrix:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise SchemaError("matrix must be a list of rows")
    try:
        return Matrix(F, [[element_from_json(x, F) for x in r] for r in rows])
    except ValueError as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(str(exc)) from exc


def ring_to_json(ctx: RingContext) -> dict:
    return {"p": ctx.p, "f": ctx.f}


def ring_from_json(d) -> RingContext:
    try:
        return RingContext(_int(_need(d, "p", "ring"), "p"), _int(d.get("f", 1), "f"))
    except ValueError as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(str(exc)) from exc


def tame_to_json(P: TameParam) -> dict:
    return {
        "field": field_to_json(P.field),
        "ring": ring_to_json(P.ctx),
        "frob": rows_to_json(P.frob),
        "gen": rows_to_json(P.gen),
    }


def tame_from_json(d, ctx: RingContext | None = None) -> TameParam:
    F = field_from_json(_need(d, "field", "tame parameter"))
    if ctx is None:
        ctx = ring_from_json(_need(d, "ring", "tame parameter"))
    frob = matrix_from_json(_need(d, "frob", "tame parameter"), F)
    gen = matrix_from_json(_need(d, "gen", "tame parameter"), F)
    if frob.dim != gen.dim:
        raise SchemaError("frob and gen must have the same size")
    return TameParam(frob, gen, ctx)


def invariants_to_json(iv: InvariantVector, F) -> dict:
    return {
        "word": str(iv.word),
        "field": field_to_json(F),
        "coeffs": [element_to_json(c, F) for c in iv.coeffs],
    }


def invariants_from_json(d) -> tuple[InvariantVector, object]:
    F = field_from_json(_need(d, "field", "invariant vector"))
    coeffs = _need(d, "coeffs", "invariant vector")
    if not isinstance(coeffs, list):
        raise SchemaError("coeffs must be a list")
    try:
        word = Word(_need(d, "word", "invariant vector"))
        return InvariantVector(word, tuple(element_from_json(c, F) for c in coeffs)), F
    except ValueError as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(str(exc)) from exc


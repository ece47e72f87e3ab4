import random
from collections import Counter
from fractions import Fraction

import pytest

from theta_coords import (
    QV,
    LaurentPoly,
    ParameterPoint,
    V,
    apply_rallis,
    build_rallis,
    elementary,
    invariant_preimage,
    point_image,
    symmetrize,
    vpow,
)
from theta_coords.errors import ArityMismatch, BadShape, NonInvertibleEntry, NotFoundWithinBound, NotInvariant
from theta_coords.rallis import constant_exponent
from theta_coords.sampling import random_laurent, random_rf, random_unit


def X(i, n):
    return LaurentPoly.var(i - 1, n)


def test_build_rallis_examples():
    r = build_rallis(2, 1)
    assert [str(f) for f in r.images] == ["(v^(-1))*X1^(-1)", "v"]
    r = build_rallis(3, 1)
    assert [str(f) for f in r.images] == ["(v^(-2))*X1^(-1)", "1", "v^2"]
    r = build_rallis(3, 3)
    assert r.images == tuple(X(i, 3) ** -1 for i in (1, 2, 3))
    with pytest.raises(BadShape):
        build_rallis(1, 2)


def test_constant_exponents_are_half_integral_q_powers():
    # q^{(i-n) + (n-1)/2} with q = v^2
    for n in range(1, 7):
        for i in range(1, n + 1):
            assert Fraction(constant_exponent(i, n), 2) == (i - n) + Fraction(n - 1, 2)


def test_apply_rallis_examples():
    r21 = build_rallis(2, 1)
    assert apply_rallis(r21, X(1, 2) + X(2, 2)) == LaurentPoly(1, {(-1,): vpow(-1), (0,): V})
    assert apply_rallis(r21, LaurentPoly.constant(1, 2)) == LaurentPoly.constant(1, 1)
    r31 = build_rallis(3, 1)
    assert apply_rallis(r31, X(1, 3) * X(2, 3) * X(3, 3)) == X(1, 1) ** -1
    with pytest.raises(ArityMismatch):
        apply_rallis(r21, X(1, 3))


def test_symmetric_image_is_symmetric():
    rng = random.Random(1)
    for _ in range(30):
        n = rng.randint(2, 4)
        m = rng.randint(1, n)
        f = random_laurent(rng, n, symmetric=True)
        assert apply_rallis(build_rallis(n, m), f).is_symmetric()


def test_point_image_examples():
    assert point_image([vpow(0)], 2) == ParameterPoint([vpow(-1), V])
    a = [vpow(3), vpow(0) * 2]
    assert point_image(a, 2) == ParameterPoint([x.inverse() for x in a])
    assert point_image([vpow(0)], 3) == ParameterPoint([vpow(-2), vpow(0), vpow(2)])
    with pytest.raises(NonInvertibleEntry):
        ParameterPoint([V + 1])
    with pytest.raises(NonInvertibleEntry):
        ParameterPoint([0])


def test_parameter_point_is_a_multiset():
    assert ParameterPoint([vpow(1), vpow(2)]) == ParameterPoint([vpow(2), vpow(1)])
    assert ParameterPoint([vpow(1), vpow(1)]) != ParameterPoint([vpow(1), vpow(2)])


def test_adjointness_on_units():
    rng = random.Random(2)
    for _ in range(100):
        n = rng.randint(1, 4)
        m = rng.randint(1, n)
        f = random_laurent(rng, n)
        a = ParameterPoint([random_unit(rng) for _ in range(m)])
        lhs = f.evaluate(point_image(a, n).entries)
        rhs = apply_rallis(build_rallis(n, m), f).evaluate(a.entries)
        assert lhs == rhs


def test_adjointness_over_rational_functions():
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(1, 4)
        m = rng.randint(1, n)
        f = random_laurent(rng, n, nterms=2, symmetric=True)
        a = [random_rf(rng, 1) for _ in range(m)]
        lhs = f.evaluate(point_image(a, n, v=QV.v).entries, QV.embed)
        rhs = apply_rallis(build_rallis(n, m), f).evaluate(a, QV.embed)
        assert lhs == rhs


def test_fast_qv_evaluation_matches_generic():
    rng = random.Random(4)
    for _ in range(20):
        f = random_laurent(rng, 2)
        a = [random_rf(rng, 1) for _ in range(2)]
        generic = QV.embed(0)
        for e, c in f.items():
            term = QV.embed(c)
            for x, k in zip(a, e):
                term = term * x**k
            generic = generic + term
        assert f.evaluate(a) == generic


def test_equivariance_under_source_permutations():
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randint(2, 4)
        m = rng.randint(1, n)
        r = build_rallis(n, m)
        f = random_laurent(rng, n)
        for i in range(m - 1):
            assert apply_rallis(r, f.swap(i, i + 1)) == apply_rallis(r, f).swap(i, i + 1)


def test_duality_is_an_involution():
    rng = random.Random(6)
    for _ in range(30):
        n = rng.randint(1, 4)
        r = build_rallis(n, n)
        f = random_laurent(rng, n)
        assert apply_rallis(r, apply_rallis(r, f)) == f


def test_point_composition():
    rng = random.Random(7)
    for n in range(1, 6):
        for k in range(1, n + 1):
            for m in range(1, k + 1):
                a = [random_unit(rng) for _ in range(m)]
                lhs = point_image(point_image(point_image(a, k), k), n)
                assert lhs == point_image(a, n)


def test_preimage_examples():
    c = LaurentPoly.constant(vpow(3) * 5, 1)
    assert invariant_preimage(c, 2) == LaurentPoly.constant(vpow(3) * 5, 2)
    g = sum((X(i, 3) ** -1 for i in (1, 2, 3)), LaurentPoly(3))
    assert invariant_preimage(g, 3) == elementary(1, 3)
    g = X(1, 1) + X(1, 1) ** -1
    f = invariant_preimage(g, 2)
    assert f.is_symmetric()
    assert apply_rallis(build_rallis(2, 1), f) == g


def test_preimage_round_trip_random():
    rng = random.Random(8)
    for _ in range(20):
        n = rng.randint(2, 4)
        m = rng.randint(1, n - 1)
        g = random_laurent(rng, m, nterms=2, symmetric=True)
        f = invariant_preimage(g, n)
        assert f.is_symmetric()
        assert apply_rallis(build_rallis(n, m), f) == g


def test_preimage_errors():
    with pytest.raises(NotInvariant):
        invariant_preimage(X(1, 2), 3)
    g = X(1, 1) ** 5
    with pytest.raises(NotFoundWithinBound):
        invariant_preimage(g, 2, bound=1, retries=0)
    assert apply_rallis(build_rallis(2, 1), invariant_preimage(g, 2, bound=1)) == g


def test_preimage_generators():
    for n in range(2, 5):
        for m in range(1, n):
            gens = [elementary(k, m) for k in range(1, m + 1)] + [elementary(m, m) ** -1]
            for g in gens:
                f = invariant_preimage(g, n)
                assert apply_rallis(build_rallis(n, m), f) == g


def test_symmetrize_counts_each_orbit_once():
    f = symmetrize(LaurentPoly.monomial((1, 1, 0)), 3)
    assert Counter(c for _, c in f.items()) == Counter({vpow(0): 3})

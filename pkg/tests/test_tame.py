import random

import pytest

from theta_coords import (
    GF,
    QV,
    InvariantVector,
    Matrix,
    NonzeroRemainder,
    RingContext,
    Specialization,
    TameParam,
    Word,
    charpoly,
    check_tame,
    l_theta,
    pullback_coefficients,
    satake_crosscheck,
    word_invariants,
)
from theta_coords.errors import MissingSqrtQ, NotDiagonal
from theta_coords.linalg import poly_from_roots, poly_mul
from theta_coords.sampling import random_invertible, random_rf, random_tame_pair
from theta_coords.tame import all_words, scalar_blocks, twisted_transpose, word_value

F13 = GF(13)
CTX3 = RingContext(3)
SPEC = Specialization(CTX3, F13, 4)


def example_pair():
    return TameParam(Matrix(F13, [[0, 1], [1, 0]]), Matrix.diag(F13, [5, 8]), CTX3)


def test_check_tame_examples():
    assert check_tame(TameParam(Matrix(F13, [[2, 1], [1, 1]]), Matrix.identity(F13, 2), CTX3))
    assert check_tame(example_pair())
    assert not check_tame(TameParam(Matrix.identity(F13, 2), Matrix.diag(F13, [5, 8]), CTX3))


def test_words():
    w = Word("FSSF")
    assert w.frob_count == 2 and str(w) == "FSSF"
    assert len(list(all_words(3))) == 2 + 4 + 8
    with pytest.raises(ValueError):
        Word("")


def test_l_theta_duality_case():
    P = example_pair()
    Q = l_theta(P, 2, SPEC)
    assert Q.frob == P.frob.transpose().inverse()
    assert Q.gen == P.gen.transpose().inverse()


def test_l_theta_block_example_over_qv():
    v = QV.v
    a = random_rf(random.Random(0))
    P = TameParam(Matrix.diag(QV, [a]), Matrix.identity(QV, 1), RingContext(2))
    Q = l_theta(P, 2)
    assert Q.frob == Matrix.diag(QV, [1 / (v * a), v])
    assert Q.gen == Matrix.identity(QV, 2)


def test_l_theta_f13_example():
    Q = l_theta(example_pair(), 3, SPEC)
    # direct matrix arithmetic: v = 4, v^-1 = 10, F^{-T} = F, sigma^{-T} = diag(8, 5)
    assert Q.frob == Matrix(F13, [[0, 10, 0], [10, 0, 0], [0, 0, 3]])
    assert Q.gen == Matrix.diag(F13, [8, 5, 1])
    assert check_tame(Q)


def test_l_theta_needs_sqrt_q():
    with pytest.raises(MissingSqrtQ):
        l_theta(example_pair(), 3)
    with pytest.raises(MissingSqrtQ):
        l_theta(example_pair(), 3, Specialization.auto(CTX3, 7))


@pytest.mark.parametrize("q,ell", [(3, 13), (2, 7), (5, 11), (3, 5)])
def test_relation_preserved(q, ell):
    ctx = RingContext(q)
    spec = Specialization.auto(ctx, ell)
    field = spec.target
    rng = random.Random(q * 100 + ell)
    for _ in range(15):
        m = rng.randint(1, 3)
        P = random_tame_pair(rng, field, ctx, m)
        assert check_tame(P)
        assert check_tame(l_theta(P, rng.randint(m, 4), spec))


def test_word_invariant_examples():
    I = Matrix.identity(F13, 3)
    P = TameParam(I, I, CTX3)
    assert word_invariants(P, "FSF").coeffs == poly_from_roots([F13.one] * 3, F13.one)
    rng = random.Random(1)
    F, S = random_invertible(rng, F13, 2), random_invertible(rng, F13, 2)
    c = word_invariants(TameParam(F, S, CTX3), "FS").coeffs
    FS = F @ S
    assert c[1] == -(FS[0, 0] + FS[1, 1])
    assert c[0] == FS.det()
    assert word_invariants(example_pair(), "S").coeffs == (F13(1), F13(0), F13(1))


def test_conjugation_invariance():
    rng = random.Random(2)
    for _ in range(20):
        P = random_tame_pair(rng, F13, CTX3, rng.randint(1, 3))
        g = random_invertible(rng, F13, P.dim)
        Pg = P.conjugate(g)
        for w in ["F", "S", "FS", "SFF", "FSFS"]:
            assert word_invariants(Pg, w) == word_invariants(P, w)
            assert word_invariants(l_theta(Pg, 4, SPEC), w) == word_invariants(l_theta(P, 4, SPEC), w)


def test_pullback_examples():
    one = F13.one
    iv = InvariantVector(Word("FS"), poly_from_roots([F13(2), F13(3)], one))
    assert pullback_coefficients(iv, scalar_blocks=[]) == iv
    d = F13(7)
    pushed = InvariantVector(Word("FFS"), poly_from_roots([F13(2), F13(3), d**2], one))
    assert pullback_coefficients(pushed, scalar_blocks=[d]).coeffs == poly_from_roots([F13(2), F13(3)], one)


def test_pullback_round_trip_and_factorization():
    rng = random.Random(3)
    v = SPEC.v_image
    for _ in range(10):
        P = random_tame_pair(rng, F13, CTX3, 2)
        Q = l_theta(P, 4, SPEC)
        F0, s0 = twisted_transpose(P, 4, v)
        D = scalar_blocks(2, 4, v)
        for w in all_words(4):
            pushed = word_invariants(Q, w)
            source = charpoly(word_value(F0, s0, w))
            factor = poly_from_roots([d ** w.frob_count for d in D], F13.one)
            assert pushed.coeffs == poly_mul(source, factor, F13.zero)
            assert pullback_coefficients(pushed, scalar_blocks=D).coeffs == source


def test_pullback_accepts_general_matrix():
    rng = random.Random(4)
    A = random_invertible(rng, F13, 2)
    P = random_tame_pair(rng, F13, CTX3, 2)
    F = Matrix.block_diag(P.frob, A)
    S = Matrix.block_diag(P.gen, Matrix.identity(F13, 2))
    pushed = word_invariants(TameParam(F, S, CTX3), "FSF")
    assert pullback_coefficients(pushed, scalar_blocks=A) == word_invariants(P, "FSF")


def test_perturbed_pushforward_is_detected():
    rng = random.Random(5)
    P = random_tame_pair(rng, F13, CTX3, 2)
    Q = l_theta(P, 3, SPEC)
    D = scalar_blocks(2, 3, SPEC.v_image)
    pushed = word_invariants(Q, "FS")
    bad = list(pushed.coeffs)
    bad[0] = bad[0] + 1
    with pytest.raises(NonzeroRemainder):
        pullback_coefficients(InvariantVector(pushed.word, tuple(bad)), scalar_blocks=D)


def test_satake_crosscheck_examples():
    v = QV.v
    assert satake_crosscheck(Matrix.diag(QV, [QV.embed(1)]), 2)
    assert satake_crosscheck(Matrix.diag(QV, [v, v + 1]), 2)
    image = l_theta(TameParam(Matrix.diag(QV, [QV.embed(1)]), Matrix.identity(QV, 1), RingContext(2)), 2)
    assert image.frob.diagonal() == (1 / v, v)
    rng = random.Random(6)
    for _ in range(20):
        n = rng.randint(2, 5)
        m = rng.randint(1, n - 1)
        assert satake_crosscheck(Matrix.diag(QV, [random_rf(rng, 1) for _ in range(m)]), n)
    with pytest.raises(NotDiagonal):
        satake_crosscheck(Matrix(QV, [[1, 1], [0, 1]]), 3)


def test_satake_crosscheck_specialized():
    F = Matrix.diag(F13, [2, 5])
    assert satake_crosscheck(F, 4, CTX3, SPEC)

"""Deterministic property suites behind ``theta verify-all``.

Each suite takes a seeded :class:`random.Random` and a config dict and
returns ``(cases, failures)``.  The report contains no timings so that two
runs with the same seed are byte-identical.
"""

from __future__ import annotations

import random
from collections import Counter

from . import __version__
from .errors import NonzeroRemainder
from .fields import QV, GF, Specialization
from .laurent import LaurentPoly, elementary
from .linalg import Matrix, charpoly, poly_from_roots, poly_mul
from .rallis import apply_rallis, build_rallis, invariant_preimage, point_image
from .sampling import (
    random_invertible,
    random_laurent,
    random_matrix,
    random_rf,
    random_support,
    random_tame_pair,
    twist_family,
)
from .scalars import RingContext, is_prime, vpow
from .strata import enumerate_strata, gl_order, orbit_transitivity_check
from .supports import (
    support_equal,
    theta_inductive_check,
    theta_support,
    trivial_rep_support,
    twist_support,
)
from .tame import (
    TameParam,
    all_words,
    check_tame,
    l_theta,
    pullback_coefficients,
    satake_crosscheck,
    scalar_blocks,
    twisted_transpose,
    word_invariants,
    word_value,
)

SCALES = {
    "small": {
        "max_n": 4,
        "random_cases": 40,
        "word_len": 3,
        "q_values": [2, 3],
        "ell_max": 30,
        "shift": 3,
        "strata_max": 2,
        "strata_q": [2, 3],
    },
    "full": {
        "max_n": 5,
        "random_cases": 200,
        "word_len": 6,
        "q_values": [2, 3, 5],
        "ell_max": 50,
        "shift": 6,
        "strata_max": 3,
        "strata_q": [2, 3, 4, 5],
    },
}

TAME_FIELDS = [(3, 13, 4), (2, 7, 3), (5, 11, 4)]  # (q, ell, sqrt of q mod ell)


def _fail(failures, msg):
    if len(failures) < 5:
        failures.append(msg)
    else:
        failures.append(None)


def suite_rallis_formula(rng, cfg):
    failures = []
    expected = {
        (2, 1): ["(v^(-1))*X1^(-1)", "v"],
        (3, 1): ["(v^(-2))*X1^(-1)", "1", "v^2"],
    }
    for (n, m), want in expected.items():
        got = [str(im) for im in build_rallis(n, m).images]
        if got != want:
            _fail(failures, f"build_rallis({n},{m}) = {got}")
    for k in range(1, cfg["max_n"] + 1):
        X = [LaurentPoly.var(i, k) for i in range(k)]
        if list(build_rallis(k, k).images) != [x**-1 for x in X]:
            _fail(failures, f"build_rallis({k},{k}) is not inversion")
    return len(expected) + cfg["max_n"], failures


def suite_adjointness(rng, cfg):
    failures = []
    cases = cfg["random_cases"]
    for _ in range(cases):
        n = rng.randint(1, min(cfg["max_n"], 4))
        m = rng.randint(1, n)
        f = random_laurent(rng, n, nterms=2, deg=2, symmetric=True)
        a = [random_rf(rng, 1) for _ in range(m)]
        lhs = f.evaluate(point_image(a, n, v=QV.v).entries, QV.embed)
        rhs = apply_rallis(build_rallis(n, m), f).evaluate(a, QV.embed)
        if lhs != rhs:
            _fail(failures, f"adjointness failed for n={n}, m={m}")
    return cases, failures


def suite_equivariance(rng, cfg):
    failures, cases = [], 0
    for n in range(2, min(cfg["max_n"], 4) + 1):
        for m in range(1, n + 1):
            rmap = build_rallis(n, m)
            f = random_laurent(rng, n, nterms=3)
            g = apply_rallis(rmap, f)
            for i in range(m):
                for j in range(i + 1, m):
                    cases += 1
                    if apply_rallis(rmap, f.swap(i, j)) != g.swap(i, j):
                        _fail(failures, f"equivariance ({i + 1} {j + 1}) n={n} m={m}")
            fs = random_laurent(rng, n, nterms=2, symmetric=True)
            cases += 1
            if not apply_rallis(rmap, fs).is_symmetric():
                _fail(failures, f"invariant image not invariant n={n} m={m}")
    return cases, failures


def suite_duality(rng, cfg):
    failures, cases = [], 0
    for n in range(1, cfg["max_n"] + 1):
        rmap = build_rallis(n, n)
        for s in [trivial_rep_support(n), random_support(rng, n)]:
            cases += 1
            if theta_support(theta_support(s, n), n) != s:
                _fail(failures, f"support duality n={n}")
        f = random_laurent(rng, n, nterms=3)
        cases += 1
        if apply_rallis(rmap, apply_rallis(rmap, f)) != f:
            _fail(failures, f"polynomial duality n={n}")
    return cases, failures


def suite_inductive(rng, cfg):
    failures, cases = [], 0
    N = cfg["max_n"]
    fam = twist_family(N, cfg["shift"])
    for s in fam:
        m = s.group_rank
        for n in range(m, N + 1):
            for k in range(m, n + 1):
                cases += 1
                if not theta_inductive_check(m, k, n, s):
                    _fail(failures, f"inductive m={m} k={k} n={n} s={s}")
    return cases, failures


def suite_injectivity(rng, cfg):
    failures, cases = [], 0
    fam = twist_family(min(cfg["max_n"], 4), cfg["shift"])
    # injectivity is a statement about each theta_{n,m} separately
    for n in range(1, cfg["max_n"] + 2):
        for m in range(1, n + 1):
            src = [s for s in fam if s.group_rank == m]
            images = Counter(theta_support(s, n) for s in src)
            cases += len(src)
            dup = [s for s, c in images.items() if c > 1]
            if dup:
                _fail(failures, f"theta_{n},{m} not injective: {dup[0]}")
    return cases, failures


def suite_mod_ell(rng, cfg):
    failures, cases = [], 0
    for q in cfg["q_values"]:
        ctx = RingContext(q)
        for ell in range(2, cfg["ell_max"] + 1):
            if not is_prime(ell) or ell == ctx.p:
                continue
            spec = Specialization.auto(ctx, ell)
            for n in range(1, 5):
                cases += 1
                s = trivial_rep_support(n)
                same = support_equal(s, twist_support(s, vpow(2)), spec)
                if same != ((q**n - 1) % ell == 0):
                    _fail(failures, f"mod-ell collapse q={q} ell={ell} n={n}")
    return cases, failures


def suite_surjectivity(rng, cfg):
    failures, cases = [], 0
    top = min(cfg["max_n"], 4)
    for n in range(2, top + 1):
        for m in range(1, n):
            gens = [elementary(k, m) for k in range(1, m + 1)] + [elementary(m, m) ** -1]
            rmap = build_rallis(n, m)
            for g in gens:
                cases += 1
                f = invariant_preimage(g, n)
                if not f.is_symmetric() or apply_rallis(rmap, f) != g:
                    _fail(failures, f"preimage round trip n={n} m={m} g={g}")
    return cases, failures


def suite_consistency(rng, cfg):
    failures, cases = [], 0
    for s in twist_family(min(cfg["max_n"], 4), 2):
        m = s.group_rank
        for n in range(m, cfg["max_n"] + 1):
            cases += 1
            lhs = Counter(theta_support(s, n).twists())
            rhs = point_image(s.twists(), n).multiset()
            if lhs != rhs:
                _fail(failures, f"support/point mismatch m={m} n={n}")
    return cases, failures


def suite_tame_preservation(rng, cfg):
    failures = []
    cases = cfg["random_cases"]
    for i in range(cases):
        q, ell, root = TAME_FIELDS[i % len(TAME_FIELDS)]
        F, ctx = GF(ell), RingContext(q)
        spec = Specialization(ctx, F, root)
        m = rng.randint(1, 3)
        n = rng.randint(m, cfg["max_n"])
        P = random_tame_pair(rng, F, ctx, m)
        if not check_tame(P) or not check_tame(l_theta(P, n, spec)):
            _fail(failures, f"tame relation lost q={q} ell={ell} m={m} n={n}")
    return cases, failures


def suite_factorization(rng, cfg):
    failures, cases = [], 0
    q, ell, root = TAME_FIELDS[0]
    F, ctx = GF(ell), RingContext(q)
    spec = Specialization(ctx, F, root)
    v = spec.v_image
    words = list(all_words(cfg["word_len"]))
    for n in range(2, cfg["max_n"] + 1):
        for m in range(1, n):
            P = TameParam(random_invertible(rng, F, m), random_invertible(rng, F, m), ctx)
            image = l_theta(P, n, spec)
            F0, s0 = twisted_transpose(P, n, v)
            blocks = scalar_blocks(m, n, v)
            for w in words:
                cases += 1
                pushed = word_invariants(image, w)
                source = charpoly(word_value(F0, s0, w))
                factor = poly_from_roots([d ** w.frob_count for d in blocks], F.one)
                if pushed.coeffs != poly_mul(source, factor, F.zero):
                    _fail(failures, f"factorization m={m} n={n} word={w}")
                    continue
                back = pullback_coefficients(pushed, w.frob_count, blocks)
                if back.coeffs != source:
                    _fail(failures, f"pullback m={m} n={n} word={w}")
                # perturb one coefficient below the leading one
                idx = rng.randrange(len(pushed.coeffs) - 1)
                bad = list(pushed.coeffs)
                bad[idx] = bad[idx] + 1
                try:
                    pullback_coefficients(type(pushed)(w, tuple(bad)), w.frob_count, blocks)
                except NonzeroRemainder:
                    pass
                else:
                    _fail(failures, f"perturbation undetected m={m} n={n} word={w}")
    return cases, failures


def suite_satake(rng, cfg):
    failures = []
    cases = cfg["random_cases"] // 2
    for _ in range(cases):
        n = rng.randint(2, cfg["max_n"])
        m = rng.randint(1, n - 1)
        Fm = Matrix.diag(QV, [random_rf(rng, 1) for _ in range(m)])
        if not satake_crosscheck(Fm, n):
            _fail(failures, f"Satake cross-check m={m} n={n}")
    return cases, failures


def suite_strata(rng, cfg):
    failures, cases = [], 0
    top = cfg["strata_max"]
    for q in cfg["strata_q"]:
        for n in range(1, top + 1):
            for m in range(1, top + 1):
                cases += 1
                r = enumerate_strata(n, m, q)
                G = gl_order(n, q) * gl_order(m, q)
                if sum(r.counts) != q ** (n * m):
                    _fail(failures, f"partition ({n},{m},{q})")
                if any(c * s != G for c, s in zip(r.counts, r.stabilizer_orders)):
                    _fail(failures, f"orbit-stabilizer ({n},{m},{q})")
                if enumerate_strata(m, n, q).counts != r.counts:
                    _fail(failures, f"transpose symmetry ({n},{m},{q})")
    for q in cfg["strata_q"]:
        for n in range(1, 3):
            for m in range(1, 3):
                for k in range(min(n, m) + 1):
                    cases += 1
                    if not orbit_transitivity_check(n, m, k, q):
                        _fail(failures, f"transitivity ({n},{m},{k},{q})")
    return cases, failures


def suite_conjugation(rng, cfg):
    failures, cases = [], 0
    q, ell, root = TAME_FIELDS[0]
    F, ctx = GF(ell), RingContext(q)
    spec = Specialization(ctx, F, root)
    for _ in range(cfg["random_cases"] // 10):
        m = rng.randint(1, 3)
        n = rng.randint(m, cfg["max_n"])
        P = TameParam(random_matrix(rng, F, m), random_invertible(rng, F, m), ctx)
        if not P.frob.is_invertible():
            continue
        g = random_invertible(rng, F, m)
        Pg = P.conjugate(g)
        for w in all_words(min(cfg["word_len"], 3)):
            cases += 1
            if word_invariants(P, w) != word_invariants(Pg, w):
                _fail(failures, "conjugation invariance (source)")
            if word_invariants(l_theta(P, n, spec), w) != word_invariants(l_theta(Pg, n, spec), w):
                _fail(failures, "conjugation invariance (image)")
    return cases, failures


SUITES = [
    ("rallis_formula", suite_rallis_formula),
    ("adjointness", suite_adjointness),
    ("equivariance", suite_equivariance),
    ("duality", suite_duality),
    ("inductive_relation", suite_inductive),
    ("injectivity", suite_injectivity),
    ("mod_ell_collapse", suite_mod_ell),
    ("surjectivity", suite_surjectivity),
    ("support_point_consistency", suite_consistency),
    ("tame_preservation", suite_tame_preservation),
    ("factorization_pullback", suite_factorization),
    ("satake_crosscheck", suite_satake),
    ("conjugation_invariance", suite_conjugation),
    ("strata_census", suite_strata),
]


def verify_all(seed: int = 0, scale: str = "small", only=None) -> dict:
    if scale not in SCALES:
        raise ValueError(f"unknown scale {scale!r}")
    cfg = SCALES[scale]
    results = []
    for name, fn in SUITES:
        if only and name not in only:
            continue
        rng = random.Random(f"{seed}:{name}")
        cases, failures = fn(rng, cfg)
        shown = [f for f in failures if f is not None]
        results.append(
            {
                "name": name,
                "cases": cases,
                "passed": not failures,
                "failures": len(failures),
                "examples": shown,
            }
        )
    return {
        "seed": seed,
        "scale": scale,
        "config": cfg,
        "toolkit_version": __version__,
        "suites": results,
        "ok": all(r["passed"] for r in results),
    }

import itertools
import json

import pytest

from theta_coords import enumerate_strata, orbit_transitivity_check, stabilizer_order
from theta_coords.errors import BadShape, TooLarge
from theta_coords.strata import all_matrices, batch_rank, field_tables, gl_order, orbit_closure, prime_power


def naive_rank_mod_p(rows, p):
    """Row reduction over F_p with plain integers."""
    A = [list(r) for r in rows]
    rank, cols = 0, len(A[0]) if A else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(A)) if A[r][c] % p), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], -1, p)
        A[rank] = [x * inv % p for x in A[rank]]
        for r in range(len(A)):
            if r != rank and A[r][c] % p:
                f = A[r][c]
                A[r] = [(x - f * y) % p for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_field_tables_are_fields(q):
    T = field_tables(q)
    for x in range(1, q):
        assert T.mul[x, T.inv[x]] == 1
        assert T.add[x, T.neg[x]] == 0
    # distributivity spot check
    for x, y, z in itertools.product(range(q), repeat=3):
        assert T.mul[x, T.add[y, z]] == T.add[T.mul[x, y], T.mul[x, z]]


def test_prime_power():
    assert prime_power(9) == (3, 2)
    with pytest.raises(ValueError):
        prime_power(6)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_batch_rank_matches_naive(q):
    mats = all_matrices(2, 3, q)
    ranks = batch_rank(mats, q)
    for i in range(0, len(mats), 7):
        assert ranks[i] == naive_rank_mod_p(mats[i].tolist(), q)


def test_enumerate_examples():
    assert enumerate_strata(2, 1, 2).counts == (1, 3)
    r = enumerate_strata(2, 2, 2)
    assert r.counts == (1, 9, 6)
    assert r.counts[2] == gl_order(2, 2)
    for n, m, q in [(1, 1, 3), (2, 2, 3), (3, 1, 4)]:
        assert enumerate_strata(n, m, q).counts[0] == 1


def test_stabilizer_examples():
    assert stabilizer_order(2, 1, 1, 2) == 2
    assert stabilizer_order(2, 2, 2, 2) == 6
    assert stabilizer_order(3, 2, 0, 3) == gl_order(3, 3) * gl_order(2, 3)
    with pytest.raises(BadShape):
        stabilizer_order(2, 2, 3, 2)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_census_identities(q):
    for n, m in itertools.product(range(1, 3), repeat=2):
        r = enumerate_strata(n, m, q)
        assert sum(r.counts) == q ** (n * m)
        assert r.cumulative[0] == q ** (n * m)
        for k, c in enumerate(r.counts):
            assert c * r.stabilizer_orders[k] == r.group_orders[0] * r.group_orders[1]
        for k in range(len(r.counts) - 1):
            assert r.cumulative[k] == r.cumulative[k + 1] + r.counts[k]
            assert r.cumulative[k + 1] < r.cumulative[k]
        assert r.counts == enumerate_strata(m, n, q).counts


def test_transitivity_examples():
    assert orbit_transitivity_check(2, 2, 0, 3)
    assert orbit_transitivity_check(2, 1, 1, 2)
    assert len(orbit_closure(2, 1, 1, 2)) == 3
    assert orbit_transitivity_check(2, 2, 1, 2)
    assert len(orbit_closure(2, 2, 1, 2)) == 9
    assert orbit_transitivity_check(2, 2, 2, 4)


def test_guard():
    with pytest.raises(TooLarge):
        enumerate_strata(5, 5, 2)
    with pytest.raises(BadShape):
        enumerate_strata(0, 1, 2)


def test_report_as_dict():
    d = enumerate_strata(2, 1, 2).as_dict()
    assert d["counts"] == [1, 3]
    assert d["stabilizer_orders"] == ["6", "2"]
    assert json.loads(json.dumps(d)) == d

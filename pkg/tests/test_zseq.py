from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from zsindex.modarith import NotAUnitError, factorize
from zsindex.zseq import (
    NotZeroSumError,
    ResidueSeq,
    canonical_rep,
    g_norm,
    g_norms,
    index,
    is_minimal_zero_sum,
    is_zero_sum,
    unit_equivalent,
    unit_multiple,
)
from conftest import FIXTURES


def test_construction_sorts_and_validates():
    S = ResidueSeq.of(25, (22, 1, 1, 1))
    assert S.terms == (1, 1, 1, 22)
    assert len(S) == 4 and list(S) == [1, 1, 1, 22]
    with pytest.raises(ValueError):
        ResidueSeq.of(25, (0, 1))
    with pytest.raises(ValueError):
        ResidueSeq.of(25, (25,))


def test_zero_sum_and_nu():
    S = ResidueSeq.of(1235, FIXTURES[1235])
    assert is_zero_sum(S) and S.nu == 2
    T = ResidueSeq.of(25, (1, 1, 1, 22))
    assert is_zero_sum(T) and T.nu == 1
    assert not is_zero_sum(ResidueSeq.of(25, (1, 2, 3, 4)))
    assert ResidueSeq.of(25, (1, 2, 3, 4)).nu is None


def test_minimality():
    assert is_minimal_zero_sum(ResidueSeq.of(1235, FIXTURES[1235]))
    assert is_minimal_zero_sum(ResidueSeq.of(25, (1, 1, 1, 22)))
    assert not is_minimal_zero_sum(ResidueSeq.of(25, (5, 20, 3, 22)))
    assert not is_minimal_zero_sum(ResidueSeq.of(25, (1, 2, 3)))


def test_fixture_subset_sums_nonzero():
    t = FIXTURES[1235]
    for r in (1, 2, 3):
        for sub in combinations(t, r):
            assert sum(sub) % 1235


def test_g_norm_hand_multipliers():
    assert g_norm(ResidueSeq.of(1235, FIXTURES[1235]), 18) == 1
    assert g_norm(ResidueSeq.of(2635, FIXTURES[2635]), 32) == 1
    assert g_norm(ResidueSeq.of(1001, FIXTURES[1001]), 6) == 1
    for n, t in FIXTURES.items():
        assert g_norm(ResidueSeq.of(n, t), 1) == 2


def test_g_norm_rejects_non_unit():
    with pytest.raises(NotAUnitError):
        g_norm(ResidueSeq.of(1235, FIXTURES[1235]), 5)


def test_g_norm_of_non_zero_sum_is_raw_sum():
    assert g_norm(ResidueSeq.of(25, (1, 2, 3)), 2) == 12


def test_g_norms_vector_agrees():
    S = ResidueSeq.of(91, (4, 10, 84, 84))
    u = S.modulus.unit_array.tolist()
    assert [int(x) for x in g_norms(S)] == [g_norm(S, v) * 91 for v in u]


def test_index_examples():
    r = index(ResidueSeq.of(1001, FIXTURES[1001]))
    assert r.value == 1
    assert g_norm(ResidueSeq.of(1001, FIXTURES[1001]), r.witness_unit) == 1
    assert index(ResidueSeq.of(25, (1, 1, 1, 22))) == (1, 1)
    assert index(ResidueSeq.of(6, (1, 3, 4, 4))).value == 2
    with pytest.raises(NotZeroSumError):
        index(ResidueSeq.of(25, (1, 2, 3)))


def test_witness_is_least_unit():
    S = ResidueSeq.of(1235, FIXTURES[1235])
    r = index(S)
    assert all(g_norm(S, v) > 1 for v in S.modulus.unit_array.tolist() if v < r.witness_unit)


def test_short_sequences_have_index_one():
    rng = random.Random(3)
    for _ in range(300):
        n = rng.randint(2, 200)
        k = rng.randint(1, 3)
        if k == 1:
            continue  # a single nonzero residue is never zero-sum
        t = [rng.randint(1, n - 1) for _ in range(k - 1)]
        last = -sum(t) % n
        if last == 0:
            continue
        S = ResidueSeq.of(n, t + [last])
        if is_minimal_zero_sum(S):
            assert index(S).value == 1


def test_index_invariant_under_units():
    rng = random.Random(11)
    for n in (35, 77, 91, 143):
        m = factorize(n)
        u = m.unit_array.tolist()
        for _ in range(250):
            t = [rng.randint(1, n - 1) for _ in range(3)]
            last = -sum(t) % n
            if last == 0:
                continue
            S = ResidueSeq(m, tuple(sorted(t + [last])))
            v = rng.choice(u)
            assert index(unit_multiple(S, v)).value == index(S).value


@settings(max_examples=200, deadline=None)
@given(st.integers(5, 400), st.lists(st.integers(1, 10**6), min_size=3, max_size=3), st.integers(0, 10**6))
def test_complement_duality(n, raw, k):
    t = [x % (n - 1) + 1 for x in raw]
    last = -sum(t) % n
    if last == 0:
        return
    S = ResidueSeq.of(n, t + [last])
    u = S.modulus.unit_array
    v = int(u[k % u.size])
    assert g_norm(S, n - v) == 4 - g_norm(S, v)


def test_canonical_rep():
    assert canonical_rep(ResidueSeq.of(25, (1, 1, 1, 22))).terms == (1, 1, 1, 22)
    S = ResidueSeq.of(1235, FIXTURES[1235])
    R = canonical_rep(S)
    assert unit_equivalent(S, R)
    members = {unit_multiple(S, v).terms for v in S.modulus.unit_array.tolist()}
    assert R.terms == min(members)


def test_unit_equivalent_negative():
    assert not unit_equivalent(ResidueSeq.of(25, (1, 1, 1, 22)), ResidueSeq.of(25, (1, 2, 3, 19)))
    assert not unit_equivalent(ResidueSeq.of(25, (1, 24)), ResidueSeq.of(26, (1, 25)))

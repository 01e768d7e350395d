from __future__ import annotations

import random
from math import gcd

import pytest

from zsindex.canon import NormalizedQuadruple as NQ, normalize
from zsindex.certs import (
    Certificate,
    HypothesisViolation,
    RenumberFailure,
    check_halfplane,
    check_sum_3n,
    compute_k1,
    count_half_open,
    omega_diagnostics,
    renumber,
    search_interval,
    search_M,
    search_small_a,
)
from zsindex.modarith import NotAUnitError
from zsindex.zseq import ResidueSeq, g_norm, index, unit_equivalent
from conftest import FIXTURES

PAPER_CERTS = {1235: (4, 18), 2635: (6, 32), 1001: (1, 6)}


def fixture_q(n):
    return normalize(ResidueSeq.of(n, FIXTURES[n]))


def ref_interval(q, mode="lemma22"):
    """Cross-multiplied reference: m*c >= k*n and m*b <= k*n, no rationals."""
    n, a, b, c = q.n, q.a, q.b, q.c
    top = b if mode == "lemma22" else min(b, b // a)
    for k in range(1, top + 1):
        lo = (k * n + c - 1) // c
        m = lo
        while m * b <= k * n:
            if m * c >= k * n and gcd(m, n) == 1:
                if mode == "lemma23" or m * a < n:
                    return k, m
                break
            m += 1
    return None


def random_q(rng, n_hi=500):
    while True:
        n = rng.randrange(9, n_hi)
        e = rng.randrange(1, n // 4 + 1)
        a = rng.randrange(e + 1, n // 2 + 1)
        b = rng.randrange(a, n // 2 + 1)
        c = a + b - e
        if 2 * c < n:
            return NQ.of(n, e, c, b, a)


@pytest.mark.parametrize("n", sorted(PAPER_CERTS))
def test_interval_pinned_k_reproduces_hand_certificates(n):
    k, m = PAPER_CERTS[n]
    cert = search_interval(fixture_q(n), k, k_min=k)
    assert (cert.k, cert.multiplier) == (k, m)
    assert cert.validate()
    assert g_norm(cert.sequence, m) == 1


@pytest.mark.parametrize("n", sorted(PAPER_CERTS))
def test_interval_default_is_least(n):
    q = fixture_q(n)
    cert = search_interval(q)
    assert (cert.k, cert.multiplier) == ref_interval(q)
    assert cert.validate()


def test_interval_matches_cross_multiplication():
    rng = random.Random(2024)
    for _ in range(10_000):
        q = random_q(rng)
        for mode in ("lemma22", "lemma23"):
            cert = search_interval(q, mode=mode)
            want = ref_interval(q, mode)
            assert (None if cert is None else (cert.k, cert.multiplier)) == want
            if cert is not None:
                assert cert.holds()


def test_interval_rejects_unknown_mode():
    with pytest.raises(ValueError):
        search_interval(fixture_q(1235), mode="nope")


def test_sum_3n():
    S = ResidueSeq.of(1235, FIXTURES[1235])
    cert = check_sum_3n(S, 1235 - 18)
    assert cert.kind == "three_n" and cert.validate()
    assert cert.witness_unit() == 18
    assert check_sum_3n(S, 1) is None
    with pytest.raises(NotAUnitError):
        check_sum_3n(S, 5)


def test_halfplane():
    S = ResidueSeq.of(1235, FIXTURES[1235])
    assert check_halfplane(S, 1) is None
    rng = random.Random(9)
    u = S.modulus.unit_array.tolist()
    for v in rng.sample(u, 200):
        cert = check_halfplane(S, v)
        if cert is not None:
            assert cert.validate()
            assert index(S).value == 1


def test_small_a_family():
    q = NQ.of(1495, 13, 585, 575, 23)
    cert = search_small_a(q)
    assert (cert.j, cert.multiplier) == (0, 66) and cert.validate()
    # n = 91 = 7 * 13, a = 7 divides n: exercises the other selections
    for coords, j in [((4, 10, 7, 7), 1), ((4, 38, 35, 7), 2), ((4, 31, 28, 7), 3)]:
        cert = search_small_a(NQ.of(91, *coords))
        assert cert.j == j and cert.validate()
    assert search_small_a(NQ.of(91, 6, 29, 28, 7)) is None


def test_small_a_gate():
    with pytest.raises(HypothesisViolation):
        search_small_a(fixture_q(1235))


def test_search_M():
    q = fixture_q(1235)
    cert = search_M(q)
    assert cert is not None and cert.multiplier <= q.n // (2 * q.e)
    assert len(cert.pair) >= 2 and cert.validate()


def test_k1():
    assert compute_k1(fixture_q(1235)) == 2
    assert compute_k1(fixture_q(1001)) is None
    rng = random.Random(4)
    for _ in range(500):
        q = random_q(rng)
        k1 = compute_k1(q)
        if k1 is not None:
            assert 1 <= k1 <= q.b


def test_omega_diagnostics_s1_empty():
    q = NQ.of(1235, 13, 447, 260, 200)
    assert q.s == 1
    assert omega_diagnostics(q).per_t == ()


def test_omega_diagnostics_third_regime():
    q = fixture_q(1001)
    d = omega_diagnostics(q)
    assert d.m1 == 6
    want = next(k for k in range(1, q.b + 1) if count_half_open(q, k) >= 4)
    assert d.l == want
    assert list(d.Nj_table) == [count_half_open(q, j) for j in range(1, want + 1)]
    # counts grow by roughly n/b - n/c per step
    assert d.Nj_table == tuple(sorted(d.Nj_table))


def test_renumber_branches():
    q = NQ.of(2255, 30, 451, 440, 41)
    r = renumber(q)
    assert isinstance(r, NQ)
    assert r.a >= 10 * r.e
    assert unit_equivalent(r.sequence(), q.sequence())

    cert = renumber(NQ.of(2755, 19, 580, 570, 29))
    assert isinstance(cert, Certificate) and cert.validate()

    fail = renumber(NQ.of(1295, 35, 555, 553, 37))
    assert isinstance(fail, RenumberFailure) and "10e'" in fail.reason

    gate = renumber(fixture_q(1235))
    assert isinstance(gate, RenumberFailure) and gate.branch == "precondition"


def test_certificate_serialization():
    cert = search_interval(fixture_q(2635), 6, k_min=6)
    d = cert.to_dict()
    assert d["kind"] == "interval" and d["k"] == 6 and d["multiplier"] == 32
    assert d["normalized"] == {"e": 17, "c": 510, "b": 465, "a": 62}


def test_doubling_kinds_refuse_even_n():
    # index 2 mod 12, yet one residue in the lower half for m = 1
    S = ResidueSeq.of(12, (1, 7, 8, 8))
    assert index(S).value == 2
    assert check_halfplane(S, 1) is None
    assert not Certificate("half_plane", 1, S, side="low").holds()
    q = normalize(ResidueSeq.of(10, (1, 3, 8, 8)))
    assert search_M(q) is None

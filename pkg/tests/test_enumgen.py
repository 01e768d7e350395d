from __future__ import annotations

from itertools import combinations_with_replacement

import numpy as np
import pytest

from zsindex.canon import classify
from zsindex.enumgen import (
    EnumFilter,
    enumerate_normal_forms,
    enumerate_quadruples,
    minimal_quadruple_tuples,
    orbit_partition,
    random_instance,
)
from zsindex.zseq import ResidueSeq, index, is_minimal_zero_sum
from conftest import FIXTURES

MASKS = [m for m in range(1, 15)]  # nonempty proper subsets of 4 positions


def bitmask_oracle(n: int) -> list[tuple[int, ...]]:
    """All 4-multisets over [1, n-1] with zero sum and no vanishing proper subset."""
    t = np.array(list(combinations_with_replacement(range(1, n), 4)), dtype=np.int64)
    if t.size == 0:
        return []
    ok = t.sum(axis=1) % n == 0
    for mask in MASKS:
        cols = [i for i in range(4) if mask >> i & 1]
        ok &= t[:, cols].sum(axis=1) % n != 0
    return [tuple(r) for r in t[ok].tolist()]


# frozen from bitmask_oracle and the canonical orbit path
FROZEN_COUNTS = {25: (624, 32), 49: (4800, 116)}


@pytest.mark.parametrize("n", sorted(FROZEN_COUNTS))
def test_frozen_counts(n):
    total = sum(1 for _ in minimal_quadruple_tuples(n))
    orbits = list(orbit_partition(n))
    assert (total, len(orbits)) == FROZEN_COUNTS[n]
    assert sum(size for _, size in orbits) == total


@pytest.mark.parametrize("n", [5, 6, 8, 12, 25, 30, 31])
def test_enumeration_matches_oracle(n):
    assert list(minimal_quadruple_tuples(n)) == bitmask_oracle(n)


def test_enumerate_25_prefix():
    first = [S.terms for S in enumerate_quadruples(25)][:3]
    assert first == [(1, 1, 1, 22), (1, 1, 2, 21), (1, 1, 3, 20)]


def test_prime_modulus_all_index_one():
    for S in enumerate_quadruples(7):
        assert index(S).value == 1


@pytest.mark.parametrize("n", [35, 60, 77, 105])
def test_orbit_paths_agree(n):
    assert list(orbit_partition(n, method="marking")) == list(orbit_partition(n, method="canonical"))


def test_orbit_unknown_method():
    with pytest.raises(ValueError):
        list(orbit_partition(25, method="nope"))


@pytest.mark.parametrize("pattern", ["A1", "A2", "A4"])
def test_pattern_source_matches_filtering(pattern):
    n = 105
    want = [t for t in minimal_quadruple_tuples(n) if classify(ResidueSeq.of(n, t)).tag == pattern]
    got = [S.terms for S in enumerate_quadruples(n, EnumFilter(pattern=pattern))]
    assert got == want


def test_fixture_in_filtered_enumeration():
    f = EnumFilter(pattern="A1", require_normalizable=True)
    assert FIXTURES[1235] in {S.terms for S in enumerate_quadruples(1235, f)}


def test_impossible_pattern_is_empty():
    assert list(enumerate_quadruples(97, EnumFilter(pattern="A1"))) == []


def test_coordinate_filters():
    f = EnumFilter(a_gt_2e=True)
    assert not f.orbit_invariant and f.needs_normal_form
    for S in enumerate_quadruples(35, f):
        from zsindex.canon import normalize
        q = normalize(S)
        assert q is not None and q.a > 2 * q.e


def test_normal_forms_a1():
    qs = list(enumerate_normal_forms(165, pattern="A1", a_gt_2e=True))
    assert all(q.a > 2 * q.e for q in qs)
    assert all(classify(q.sequence()).tag == "A1" for q in qs)
    assert [q.coords for q in qs] == sorted(q.coords for q in qs)
    brute = [q.coords for q in enumerate_normal_forms(165, None, a_gt_2e=True)
             if classify(q.sequence()).tag == "A1"]
    assert [q.coords for q in qs] == brute


def test_normal_forms_are_minimal():
    for q in enumerate_normal_forms(35):
        S = q.sequence()
        assert S.nu == 2 and is_minimal_zero_sum(S)


def test_random_instance():
    assert random_instance(1001, seed=3) == random_instance(1001, seed=3)
    S = random_instance(1001, EnumFilter(pattern="A3"), seed=1)
    assert classify(S).tag == "A3" and sum(S.terms) % 1001 == 0
    assert random_instance(97, EnumFilter(pattern="A1"), seed=1) is None
    assert is_minimal_zero_sum(random_instance(1235, seed=0))

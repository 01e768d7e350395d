"""Generation of minimal zero-sum quadruples over Z_n.

Quadruples are multisets, emitted once each as sorted tuples in
lexicographic order.  For a zero-sum quadruple the only subsets that can
vanish are pairs, and the pair sums x1+x2, x1+x3, x1+x4 vanish exactly when
their complements do, so minimality costs three tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations
from math import gcd
from typing import Iterator

import numpy as np

from .canon import NormalizedQuadruple, classify, normalize
from .modarith import Modulus, factorize
from .zseq import ResidueSeq, canonical_rep

__all__ = [
    "EnumFilter",
    "minimal_quadruple_tuples",
    "enumerate_quadruples",
    "orbit_partition",
    "enumerate_orbit_reps",
    "enumerate_normal_forms",
    "random_instance",
]


@dataclass(frozen=True)
class EnumFilter:
    """Independent predicates; the default accepts every quadruple.

    ``a_gt_2e`` / ``a_gt_4e`` constrain the normal form (None = ignore,
    True/False = required truth value) and imply normalizability.
    """

    pattern: str | None = None
    require_normalizable: bool = False
    a_gt_2e: bool | None = None
    a_gt_4e: bool | None = None

    @property
    def is_empty(self) -> bool:
        return self == EnumFilter()

    @property
    def needs_normal_form(self) -> bool:
        return self.require_normalizable or self.a_gt_2e is not None or self.a_gt_4e is not None

    @property
    def orbit_invariant(self) -> bool:
        return self.a_gt_2e is None and self.a_gt_4e is None

    def accepts(self, S: ResidueSeq) -> bool:
        if self.pattern is not None and classify(S).tag != self.pattern:
            return False
        if self.needs_normal_form:
            q = normalize(S)
            if q is None:
                return False
            if self.a_gt_2e is not None and (q.a > 2 * q.e) != self.a_gt_2e:
                return False
            if self.a_gt_4e is not None and (q.a > 4 * q.e) != self.a_gt_4e:
                return False
        return True


def _pattern_possible(m: Modulus, pattern: str | None) -> bool:
    if pattern in ("A1", "A2", "A3", "A4"):
        return len(m.primes) == 3 and m.squarefree
    if pattern == "TwoPrimeOrFewer":
        return len(m.primes) <= 2
    return True


def minimal_quadruple_tuples(n: int) -> Iterator[tuple[int, int, int, int]]:
    """Raw sorted tuples of every minimal zero-sum quadruple, lexicographic."""
    for x1 in range(1, n):
        for x2 in range(x1, n):
            s12 = x1 + x2
            if s12 % n == 0:
                continue
            for x3 in range(x2, n):
                x4 = -(s12 + x3) % n
                if x4 < x3:
                    continue
                if (x1 + x3) % n == 0 or (x1 + x4) % n == 0:
                    continue
                yield (x1, x2, x3, x4)


def _gcd_multisets(m: Modulus, pattern: str) -> set[tuple[int, ...]]:
    out = set()
    for p1, p2, p3 in permutations(m.primes):
        out.add(tuple(sorted({
            "A1": (p1, p2, p1 * p3, p2 * p3),
            "A2": (1, p1, p2, p1 * p2),
            "A4": (1, p1 * p2, p1 * p3, p2 * p3),
        }[pattern])))
    return out


def _pattern_tuples(m: Modulus, pattern: str) -> list[tuple[int, int, int, int]]:
    """Sorted minimal tuples whose gcd multiset is one of the pattern's.

    Three terms range over exact multiples of their gcd; the fourth, the one
    with the smallest gcd, is forced by the zero-sum condition.
    """
    n = m.n
    found = set()
    for ds in _gcd_multisets(m, pattern):
        free, forced = ds[1:], ds[0]
        pools = [_exact_multiples(n, d, 1, n - 1) for d in free]
        for x in pools[0]:
            for y in pools[1]:
                for z in pools[2]:
                    w = -(x + y + z) % n
                    if w and gcd(w, n) == forced:
                        found.add(tuple(sorted((w, x, y, z))))
    return sorted(
        t for t in found
        if (t[0] + t[1]) % n and (t[0] + t[2]) % n and (t[0] + t[3]) % n
    )


def _candidate_tuples(m: Modulus, pattern: str | None):
    if pattern in ("A1", "A2", "A4") and _pattern_possible(m, pattern):
        return _pattern_tuples(m, pattern)
    return minimal_quadruple_tuples(m.n)


def enumerate_quadruples(m: Modulus | int, f: EnumFilter | None = None) -> Iterator[ResidueSeq]:
    m = m if isinstance(m, Modulus) else factorize(m)
    f = f or EnumFilter()
    if not _pattern_possible(m, f.pattern):
        return
    for t in _candidate_tuples(m, f.pattern):
        S = ResidueSeq(m, t)
        if f.is_empty or f.accepts(S):
            yield S


def _orbit(m: Modulus, t: tuple[int, ...]) -> set[tuple[int, ...]]:
    rows = np.sort((m.unit_array[:, None] * np.asarray(t, dtype=np.int64)) % m.n, axis=1)
    return set(map(tuple, rows.tolist()))


def orbit_partition(
    m: Modulus | int, f: EnumFilter | None = None, method: str = "marking"
) -> Iterator[tuple[ResidueSeq, int]]:
    """(representative, orbit size) for every unit orbit, in representative order.

    The representative is the lexicographically least member (canonical_rep).
    ``method="marking"`` walks the lexicographic enumeration and marks each new
    orbit as seen; the first member met is its least one.  ``method="canonical"``
    computes canonical_rep of every quadruple; slower, kept as a cross-check.
    Filters are applied to representatives; pattern and normalizability are
    orbit invariants, the normal-form coordinate flags are not.
    """
    m = m if isinstance(m, Modulus) else factorize(m)
    f = f or EnumFilter()
    if not _pattern_possible(m, f.pattern):
        return
    if method == "marking":
        seen: set[tuple[int, ...]] = set()
        for t in _candidate_tuples(m, f.pattern):
            if t in seen:
                continue
            orbit = _orbit(m, t)
            seen |= orbit
            rep = ResidueSeq(m, t)
            if f.is_empty or f.accepts(rep):
                yield rep, len(orbit)
    elif method == "canonical":
        sizes: dict[tuple[int, ...], int] = {}
        for t in _candidate_tuples(m, f.pattern):
            rep = canonical_rep(ResidueSeq(m, t)).terms
            sizes[rep] = sizes.get(rep, 0) + 1
        for t in sorted(sizes):
            rep = ResidueSeq(m, t)
            if f.is_empty or f.accepts(rep):
                yield rep, sizes[t]
    else:
        raise ValueError(f"unknown orbit method {method!r}")


def enumerate_orbit_reps(
    m: Modulus | int, f: EnumFilter | None = None, method: str = "marking"
) -> Iterator[ResidueSeq]:
    for rep, _ in orbit_partition(m, f, method):
        yield rep


def _exact_multiples(n: int, d: int, lo: int, hi: int) -> list[int]:
    """Multiples x of d with lo <= x <= hi and gcd(x, n) == d."""
    start = -(-lo // d) * d
    return [x for x in range(max(start, d), hi + 1, d) if gcd(x, n) == d]


def enumerate_normal_forms(
    m: Modulus | int, pattern: str | None = None, a_gt_2e: bool | None = None
) -> Iterator[NormalizedQuadruple]:
    """Every coordinate tuple (e, c, b, a) in normal shape, sorted by (e, c, b, a).

    Each tuple denormalizes to a minimal zero-sum quadruple with term sum 2n.
    Tuples are not deduplicated by unit orbit.  ``pattern="A1"`` iterates
    only over coordinates carrying the required gcds.
    """
    m = m if isinstance(m, Modulus) else factorize(m)
    n = m.n
    half = (n - 1) // 2  # largest integer below n/2 (n odd) or n/2 - 1 (n even)
    if 2 * half == n:
        half -= 1
    out: list[tuple[int, int, int, int]] = []

    def keep(e, a):
        return a_gt_2e is None or (a > 2 * e) == a_gt_2e

    if pattern is None:
        for e in range(1, half + 1):
            for a in range(e + 1, half + 1):
                if not keep(e, a):
                    continue
                for b in range(a, half - a + e + 1):
                    c = a + b - e
                    if b < c <= half:
                        out.append((e, c, b, a))
    elif pattern == "A1":
        if len(m.primes) != 3 or not m.squarefree:
            return
        gsets = set()
        for p1, p2, p3 in permutations(m.primes):
            gsets.add(tuple(sorted((p1, p2, p1 * p3, p2 * p3))))
        for gs in sorted(gsets):
            for de, da, db, dc in permutations(gs):
                for e in _exact_multiples(n, de, 1, half):
                    for a in _exact_multiples(n, da, e + 1, half):
                        if not keep(e, a):
                            continue
                        for b in _exact_multiples(n, db, a, half - a + e):
                            c = a + b - e
                            if b < c <= half and gcd(c, n) == dc:
                                out.append((e, c, b, a))
    else:
        for q in enumerate_normal_forms(m, None, a_gt_2e):
            if classify(q.sequence()).tag == pattern:
                yield q
        return
    for e, c, b, a in sorted(out):
        yield NormalizedQuadruple(m, e, c, b, a)


def random_instance(
    m: Modulus | int, f: EnumFilter | None = None, seed: int = 0, max_attempts: int = 10_000
) -> ResidueSeq | None:
    """Rejection-sampled minimal zero-sum quadruple passing f; None on exhaustion."""
    m = m if isinstance(m, Modulus) else factorize(m)
    f = f or EnumFilter()
    n = m.n
    if n < 5 or not _pattern_possible(m, f.pattern):
        return None
    rng = random.Random(seed)
    for _ in range(max_attempts):
        x1, x2, x3 = (rng.randrange(1, n) for _ in range(3))
        x4 = -(x1 + x2 + x3) % n
        if x4 == 0:
            continue
        t = (x1, x2, x3, x4)
        if any((t[0] + t[i]) % n == 0 for i in (1, 2, 3)):
            continue
        S = ResidueSeq(m, t)
        if f.is_empty or f.accepts(S):
            return S
    return None

"""Normal form (e, c, b, a) of minimal zero-sum quadruples and gcd patterns.

A quadruple is in normal form when, after multiplying by some unit, its
sorted terms y1 <= y2 <= y3 <= y4 satisfy

    y1 < y2 < n/2 < y3 <= y4 < n - y1,   y1 + y2 + y3 + y4 = 2n,

and then e = y1, c = y2, b = n - y3, a = n - y4.  These coordinates obey
e + c = a + b and e < a <= b < c < n/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import gcd

import numpy as np

from .modarith import Modulus, factorize
from .zseq import ResidueSeq, is_minimal_zero_sum

__all__ = [
    "NormalizedQuadruple",
    "GcdPattern",
    "PATTERN_TAGS",
    "classify",
    "normalize",
    "denormalize",
    "in_normal_shape",
]

PATTERN_TAGS = ("A1", "A2", "A3", "A4", "TwoPrimeOrFewer", "Other")


@dataclass(frozen=True)
class NormalizedQuadruple:
    modulus: Modulus
    e: int
    c: int
    b: int
    a: int
    normalizing_unit: int = 1

    def __post_init__(self):
        n, e, c, b, a = self.n, self.e, self.c, self.b, self.a
        if e + c != a + b:
            raise ValueError(f"e + c != a + b for {self.coords}")
        if not (1 <= e < a <= b < c and 2 * c < n):
            raise ValueError(f"need 1 <= e < a <= b < c < n/2, got {self.coords} with n={n}")

    @classmethod
    def of(cls, n: int | Modulus, e: int, c: int, b: int, a: int, normalizing_unit: int = 1):
        m = n if isinstance(n, Modulus) else factorize(n)
        return cls(m, e, c, b, a, normalizing_unit)

    @property
    def n(self) -> int:
        return self.modulus.n

    @property
    def coords(self) -> tuple[int, int, int, int]:
        return (self.e, self.c, self.b, self.a)

    @property
    def s(self) -> int:
        return self.b // self.a

    def sequence(self) -> ResidueSeq:
        return denormalize(self)

    def __repr__(self):
        return f"NormalizedQuadruple(n={self.n}, e={self.e}, c={self.c}, b={self.b}, a={self.a})"


def denormalize(q: NormalizedQuadruple) -> ResidueSeq:
    n = q.n
    return ResidueSeq(q.modulus, (q.e, q.c, n - q.b, n - q.a))


def in_normal_shape(y: tuple[int, ...], n: int) -> bool:
    """Shape test on a sorted 4-tuple of residues."""
    y1, y2, y3, y4 = y
    return y1 < y2 and 2 * y2 < n < 2 * y3 and y3 <= y4 < n - y1 and y1 + y2 + y3 + y4 == 2 * n


def normalize(S: ResidueSeq) -> NormalizedQuadruple | None:
    """Normal form reached by the least unit that produces one, or None."""
    if len(S) != 4:
        raise ValueError(f"normal form is defined for quadruples, got length {len(S)}")
    if not is_minimal_zero_sum(S):
        raise ValueError(f"{S} is not a minimal zero-sum sequence")
    n = S.n
    u = S.modulus.unit_array
    rows = np.sort((u[:, None] * np.asarray(S.terms, dtype=np.int64)) % n, axis=1)
    y1, y2, y3, y4 = rows.T
    ok = (
        (y1 < y2)
        & (2 * y2 < n)
        & (2 * y3 > n)
        & (y3 <= y4)
        & (y4 < n - y1)
        & (rows.sum(axis=1) == 2 * n)
    )
    hits = np.flatnonzero(ok)
    if hits.size == 0:
        return None
    i = hits[0]
    e, c, t3, t4 = (int(x) for x in rows[i])
    return NormalizedQuadruple(S.modulus, e, c, n - t3, n - t4, int(u[i]))


@dataclass(frozen=True)
class GcdPattern:
    tag: str
    labeled_primes: tuple[int, int, int] | None = None


def _pattern_sets(p1: int, p2: int, p3: int) -> list[tuple[str, list[int]]]:
    return [
        ("A1", sorted([p1, p2, p1 * p3, p2 * p3])),
        ("A2", sorted([1, p1, p2, p1 * p2])),
        ("A3", [1, 1, 1, 1]),
        ("A4", sorted([1, p1 * p2, p1 * p3, p2 * p3])),
    ]


def classify(S: ResidueSeq) -> GcdPattern:
    """(A1)-(A4) tag of a quadruple from the multiset {gcd(x_i, n)}.

    The tags need n squarefree with exactly three primes; fewer primes give
    TwoPrimeOrFewer and anything else unmatched gives Other.  Prime labelings
    are tried in lexicographic order, so A1 and A2 report p1 < p2.
    """
    if len(S) != 4:
        raise ValueError(f"classify expects a quadruple, got length {len(S)}")
    m = S.modulus
    if len(m.primes) <= 2:
        return GcdPattern("TwoPrimeOrFewer")
    if len(m.primes) != 3 or not m.squarefree:
        return GcdPattern("Other")
    gcds = sorted(gcd(x, m.n) for x in S.terms)
    for tag in ("A1", "A2", "A3", "A4"):
        for labels in permutations(m.primes):
            if dict(_pattern_sets(*labels))[tag] == gcds:
                return GcdPattern(tag, None if tag == "A3" else labels)
    return GcdPattern("Other")

"""Exact modular arithmetic over Z_n.

Residues follow the convention |x|_n in [1, n]: a multiple of n maps to n,
never to 0.  Interval endpoints are exact rationals; no floats are used.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from math import gcd, prod
from typing import Iterator, NamedTuple

import numpy as np

__all__ = [
    "Modulus",
    "RationalBound",
    "IntervalScan",
    "NotAUnitError",
    "residue",
    "factorize",
    "units",
    "inverse",
    "integer_range",
    "coprime_in_interval",
]


class NotAUnitError(ValueError):
    """Raised when an operation requires gcd(v, n) = 1."""


@dataclass(frozen=True)
class Modulus:
    n: int
    prime_factors: tuple[tuple[int, int], ...]
    phi: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"modulus must be >= 2, got {self.n}")
        ps = [p for p, _ in self.prime_factors]
        if ps != sorted(set(ps)) or any(k < 1 for _, k in self.prime_factors):
            raise ValueError(f"malformed factorization {self.prime_factors}")
        if prod(p**k for p, k in self.prime_factors) != self.n:
            raise ValueError(f"factorization does not multiply to {self.n}")
        if prod(p ** (k - 1) * (p - 1) for p, k in self.prime_factors) != self.phi:
            raise ValueError(f"phi({self.n}) is not {self.phi}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.prime_factors)

    @property
    def squarefree(self) -> bool:
        return all(k == 1 for _, k in self.prime_factors)

    def is_unit(self, v: int) -> bool:
        return gcd(v, self.n) == 1

    @cached_property
    def unit_array(self) -> np.ndarray:
        """All units in [1, n-1], ascending, as int64."""
        sieve = np.ones(self.n, dtype=bool)
        sieve[0] = False
        for p in self.primes:
            sieve[::p] = False
        return np.flatnonzero(sieve).astype(np.int64)

    @cached_property
    def _squarefree_divisors(self) -> tuple[tuple[int, int], ...]:
        # (d, mu(d)) for every squarefree divisor d of n
        out = []
        for r in range(len(self.primes) + 1):
            for combo in combinations(self.primes, r):
                out.append((prod(combo), (-1) ** r))
        return tuple(out)

    def count_coprime_upto(self, x: int) -> int:
        """Number of integers in [1, x] coprime to n (x may be <= 0)."""
        return sum(mu * (x // d) for d, mu in self._squarefree_divisors)

    def __repr__(self):
        fac = "*".join(f"{p}^{k}" if k > 1 else str(p) for p, k in self.prime_factors)
        return f"Modulus({self.n} = {fac})"


def _as_n(m: Modulus | int) -> int:
    return m.n if isinstance(m, Modulus) else int(m)


def residue(x: int, m: Modulus | int) -> int:
    """The representative of x modulo n lying in [1, n]."""
    n = _as_n(m)
    r = x % n
    return r if r else n


@lru_cache(maxsize=4096)
def factorize(n: int) -> Modulus:
    """Trial-division factorization of n >= 2."""
    n = int(n)
    if n < 2:
        raise ValueError(f"cannot factorize {n}: need n >= 2")
    factors = []
    rest = n
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            k = 0
            while rest % p == 0:
                rest //= p
                k += 1
            factors.append((p, k))
        p += 1 if p == 2 else 2
    if rest > 1:
        factors.append((rest, 1))
    phi = n
    for q, _ in factors:
        phi = phi // q * (q - 1)
    return Modulus(n, tuple(factors), phi)


def _modulus(m: Modulus | int) -> Modulus:
    return m if isinstance(m, Modulus) else factorize(m)


def units(m: Modulus | int) -> Iterator[int]:
    """Units of Z_n in ascending order."""
    m = _modulus(m)
    return (int(v) for v in m.unit_array)


def inverse(v: int, m: Modulus | int) -> int:
    n = _as_n(m)
    if gcd(v, n) != 1:
        raise NotAUnitError(f"{v} is not a unit modulo {n}")
    if n == 1:
        return 0
    return pow(v, -1, n)


@dataclass(frozen=True)
class RationalBound:
    """An exact interval endpoint with its own closure flag."""

    value: Fraction
    inclusive: bool = True

    def __post_init__(self):
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))

    @classmethod
    def of(cls, numerator: int, denominator: int = 1, inclusive: bool = True) -> RationalBound:
        if denominator == 0:
            raise ZeroDivisionError("zero denominator")
        return cls(Fraction(numerator, denominator), inclusive)

    @property
    def numerator(self) -> int:
        return self.value.numerator

    @property
    def denominator(self) -> int:
        return self.value.denominator

    def __str__(self):
        return f"{self.numerator}/{self.denominator}" if self.denominator != 1 else str(self.numerator)


def integer_range(lo: RationalBound, hi: RationalBound) -> tuple[int, int]:
    """First and last integer inside the interval; first > last when empty."""
    q, r = divmod(lo.numerator, lo.denominator)
    if r:
        first = q + 1
    else:
        first = q if lo.inclusive else q + 1
    q, r = divmod(hi.numerator, hi.denominator)
    if r:
        last = q
    else:
        last = q if hi.inclusive else q - 1
    return first, last


class IntervalScan(NamedTuple):
    least_coprime: int | None
    count: int
    coprime_count: int


def coprime_in_interval(lo: RationalBound, hi: RationalBound, m: Modulus | int) -> IntervalScan:
    """Least integer coprime to n in the interval, with exact counts.

    Counts use inclusion-exclusion over the prime divisors of n, so the cost
    does not depend on the interval length.
    """
    m = _modulus(m)
    first, last = integer_range(lo, hi)
    if first > last:
        return IntervalScan(None, 0, 0)
    count = last - first + 1
    cop = m.count_coprime_upto(last) - m.count_coprime_upto(first - 1)
    least = None
    if cop:
        x = first
        while gcd(x, m.n) != 1:
            x += 1
        least = x
    return IntervalScan(least, count, cop)

"""Sequences over Z_n, zero-sum predicates and the index.

A sequence S = (x_1 g)...(x_k g) is stored by its coefficients x_i in
[1, n-1].  Multiplying every coefficient by a unit v is the same as
rewriting S over the generator v^{-1} g, so the index is the minimum over
units v of sum(|v x_i|_n) / n.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, NamedTuple

import numpy as np

from .modarith import Modulus, NotAUnitError, factorize, residue

__all__ = [
    "ResidueSeq",
    "IndexResult",
    "NotZeroSumError",
    "is_zero_sum",
    "is_minimal_zero_sum",
    "g_norm",
    "g_norms",
    "index",
    "canonical_rep",
    "unit_multiple",
    "unit_equivalent",
]


class NotZeroSumError(ValueError):
    pass


@dataclass(frozen=True)
class ResidueSeq:
    """Unordered sequence of nonzero residues; terms are kept sorted."""

    modulus: Modulus
    terms: tuple[int, ...]

    def __post_init__(self):
        n = self.modulus.n
        terms = tuple(sorted(int(x) for x in self.terms))
        for x in terms:
            if not 1 <= x <= n - 1:
                raise ValueError(f"term {x} outside [1, {n - 1}]")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def of(cls, n: int | Modulus, terms: Iterable[int]) -> ResidueSeq:
        m = n if isinstance(n, Modulus) else factorize(n)
        return cls(m, tuple(terms))

    @property
    def n(self) -> int:
        return self.modulus.n

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    @property
    def nu(self) -> int | None:
        """sum(terms) / n for a zero-sum sequence, else None."""
        q, r = divmod(sum(self.terms), self.n)
        return q if r == 0 else None

    def __repr__(self):
        return f"ResidueSeq(n={self.n}, {self.terms})"


def is_zero_sum(S: ResidueSeq) -> bool:
    return sum(S.terms) % S.n == 0


def is_minimal_zero_sum(S: ResidueSeq) -> bool:
    if not S.terms or not is_zero_sum(S):
        return False
    n, t = S.n, S.terms
    k = len(t)
    # every nonempty proper subset, by bitmask
    for mask in range(1, (1 << k) - 1):
        if sum(t[i] for i in range(k) if mask >> i & 1) % n == 0:
            return False
    return True


def _require_unit(v: int, n: int):
    if gcd(v, n) != 1:
        raise NotAUnitError(f"{v} is not a unit modulo {n}")


def g_norm(S: ResidueSeq, v: int) -> int:
    """sum(|v x_i|_n) / n, or the raw coefficient sum when S is not zero-sum."""
    n = S.n
    _require_unit(v, n)
    total = sum(residue(v * x, n) for x in S.terms)
    q, r = divmod(total, n)
    return q if r == 0 else total


def g_norms(S: ResidueSeq) -> np.ndarray:
    """Coefficient sums sum(|v x_i|_n) for every unit v, aligned with S.modulus.unit_array."""
    u = S.modulus.unit_array
    t = np.asarray(S.terms, dtype=np.int64)
    # units times nonzero residues never vanish mod n, so % n already lands in [1, n-1]
    return ((u[:, None] * t[None, :]) % S.n).sum(axis=1)


class IndexResult(NamedTuple):
    value: int
    witness_unit: int


def index(S: ResidueSeq) -> IndexResult:
    """ind(S) with the least unit attaining it."""
    if not is_zero_sum(S):
        raise NotZeroSumError(f"{S} is not zero-sum")
    sums = g_norms(S)
    i = int(np.argmin(sums))  # argmin returns the first, i.e. least, unit
    return IndexResult(int(sums[i]) // S.n, int(S.modulus.unit_array[i]))


def unit_multiple(S: ResidueSeq, v: int) -> ResidueSeq:
    _require_unit(v, S.n)
    return ResidueSeq(S.modulus, tuple(residue(v * x, S.n) for x in S.terms))


def _sorted_multiples(S: ResidueSeq) -> np.ndarray:
    u = S.modulus.unit_array
    t = np.asarray(S.terms, dtype=np.int64)
    return np.sort((u[:, None] * t[None, :]) % S.n, axis=1)


def canonical_rep(S: ResidueSeq) -> ResidueSeq:
    """Lexicographically least sorted term tuple over the unit orbit of S."""
    rows = _sorted_multiples(S)
    # lexsort keys are given last-column-first
    best = np.lexsort(rows.T[::-1])[0]
    return ResidueSeq(S.modulus, tuple(int(x) for x in rows[best]))


def unit_equivalent(S: ResidueSeq, T: ResidueSeq) -> bool:
    return S.n == T.n and len(S) == len(T) and canonical_rep(S) == canonical_rep(T)

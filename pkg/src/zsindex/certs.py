"""Certificates that ind(S) = 1, and the searches that produce them.

Every certificate can re-check its own defining condition (``holds``) and
then confirm index 1 either through an explicit unit with g-norm 1
(``witness_unit``) or, failing that, through the full index computation.
Searches never trust their own conditions: callers validate.

The half-plane, M-type and small-a arguments pass through the doubled
multiplier, so they need 2 to be a unit: for even n those kinds never hold
and their searches return None.

Interval closure conventions, fixed per device:

    device                       interval               closure
    ---------------------------  ---------------------  -----------
    interval multiplier search   [kn/c, kn/b]           closed
    k1                           [kn/c, kn/b)           half-open
    N_j counts and l             [jn/c, jn/b)           half-open
    Omega intervals              [(2s-2t-1)n/2b, (s-t)n/b]  closed
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .canon import NormalizedQuadruple, denormalize
from .modarith import NotAUnitError, RationalBound, coprime_in_interval, integer_range, residue
from .zseq import ResidueSeq, g_norm, index

__all__ = [
    "Certificate",
    "CERT_KINDS",
    "ODD_ONLY_KINDS",
    "HypothesisViolation",
    "OmegaRow",
    "OmegaDiagnostics",
    "RenumberFailure",
    "check_sum_3n",
    "check_halfplane",
    "search_interval",
    "search_M",
    "search_small_a",
    "small_a_applies",
    "renumber_applies",
    "compute_k1",
    "omega_diagnostics",
    "count_half_open",
    "renumber",
]

CERT_KINDS = ("multiplier", "three_n", "half_plane", "interval", "m_type", "small_a")
ODD_ONLY_KINDS = ("half_plane", "m_type", "small_a")


class HypothesisViolation(ValueError):
    """A search was called outside the hypotheses it is proved under."""


def _ceil_div(x: int, y: int) -> int:
    return -(-x // y)


def _low(r: int, n: int) -> bool:
    # r in [1, n/2]
    return 2 * r <= n


def _high(r: int, n: int) -> bool:
    # r in [n/2, n]
    return 2 * r >= n


def _halfplane_side(residues, n: int) -> str | None:
    if sum(_low(r, n) for r in residues) <= 1:
        return "low"
    if sum(_high(r, n) for r in residues) <= 1:
        return "high"
    return None


@dataclass(frozen=True)
class Certificate:
    kind: str
    multiplier: int
    context: ResidueSeq | NormalizedQuadruple
    k: int | None = None
    mode: str | None = None
    side: str | None = None
    pair: tuple[str, ...] | None = None
    j: int | None = None

    @property
    def n(self) -> int:
        return self.context.n

    @property
    def sequence(self) -> ResidueSeq:
        c = self.context
        return denormalize(c) if isinstance(c, NormalizedQuadruple) else c

    @property
    def quadruple(self) -> NormalizedQuadruple | None:
        c = self.context
        return c if isinstance(c, NormalizedQuadruple) else None

    def holds(self) -> bool:
        """Re-apply the defining condition to the context."""
        S, n, m = self.sequence, self.n, self.multiplier
        if gcd(m, n) != 1 or not 1 <= m:
            return False
        if self.kind in ODD_ONLY_KINDS and n % 2 == 0:
            return False
        res = [residue(m * x, n) for x in S.terms]
        q = self.quadruple
        if self.kind == "multiplier":
            return sum(res) == n
        if self.kind == "three_n":
            return sum(res) == 3 * n
        if self.kind == "half_plane":
            if self.side == "low":
                return sum(_low(r, n) for r in res) <= 1
            if self.side == "high":
                return sum(_high(r, n) for r in res) <= 1
            return _halfplane_side(res, n) is not None
        if q is None:
            return False
        if self.kind == "interval":
            k = self.k
            if k is None or not 1 <= k <= q.b:
                return False
            if not (k * n <= m * q.c and m * q.b <= k * n):
                return False
            if self.mode == "lemma23":
                return q.a * k <= q.b
            return m * q.a < n
        if self.kind == "m_type":
            if 2 * q.e * m > n:
                return False
            got = _m_type_pair(q, m)
            return len(got) >= 2 and set(self.pair or ()) <= set(got)
        if self.kind == "small_a":
            if not small_a_applies(q) or self.j is None:
                return False
            if m != _small_a_multipliers(q)[self.j]:
                return False
            return all(2 * residue(m * x, n) > n for x in (q.e, n - q.a, n - q.b))
        return False

    def witness_unit(self) -> int | None:
        """A unit derived from the multiplier with g-norm exactly 1, if any.

        Tried in order: m, n - m and, for odd n, 2m and n - 2m.  The last two
        cover the half-plane shape, where three residues on one side force
        the doubled multiplier to reach 3n.
        """
        S, n, m = self.sequence, self.n, self.multiplier
        cands = [m % n, (-m) % n]
        if n % 2:
            cands += [(2 * m) % n, (-2 * m) % n]
        for v in cands:
            if v and gcd(v, n) == 1 and g_norm(S, v) == 1:
                return v
        return None

    def validate(self, oracle: bool = True) -> bool:
        """Condition holds and index 1 is confirmed (witness first, then oracle)."""
        if not self.holds():
            return False
        if self.witness_unit() is not None:
            return True
        return oracle and index(self.sequence).value == 1

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "multiplier": self.multiplier, "n": self.n,
             "sequence": list(self.sequence.terms)}
        for key in ("k", "mode", "side", "j"):
            val = getattr(self, key)
            if val is not None:
                d[key] = val
        if self.pair is not None:
            d["pair"] = list(self.pair)
        q = self.quadruple
        if q is not None:
            d["normalized"] = {"e": q.e, "c": q.c, "b": q.b, "a": q.a}
        return d


def _require_unit(m: int, n: int):
    if gcd(m, n) != 1:
        raise NotAUnitError(f"{m} is not a unit modulo {n}")


def check_sum_3n(S: ResidueSeq, m: int) -> Certificate | None:
    """Residues of m*S summing to 3n; the complementary unit n - m has g-norm 1."""
    _require_unit(m, S.n)
    if sum(residue(m * x, S.n) for x in S.terms) == 3 * S.n:
        return Certificate("three_n", m, S)
    return None


def check_halfplane(S: ResidueSeq, m: int) -> Certificate | None:
    """At most one residue of m*S in [1, n/2], or at most one in [n/2, n]."""
    _require_unit(m, S.n)
    if S.n % 2 == 0:
        return None
    side = _halfplane_side([residue(m * x, S.n) for x in S.terms], S.n)
    return Certificate("half_plane", m, S, side=side) if side else None


def search_interval(
    q: NormalizedQuadruple,
    k_max: int | None = None,
    *,
    k_min: int = 1,
    mode: str = "lemma22",
) -> Certificate | None:
    """Least (k, m) with m coprime to n in [kn/c, kn/b] and 1 <= k <= b.

    ``mode="lemma22"`` also requires m*a < n; ``mode="lemma23"`` requires
    a <= b/k instead.  k ascends from ``k_min``; for each k the least coprime
    m in the closed interval is taken.
    """
    if mode not in ("lemma22", "lemma23"):
        raise ValueError(f"unknown mode {mode!r}")
    n, m_ = q.n, q.modulus
    top = q.b if k_max is None else min(k_max, q.b)
    if mode == "lemma23":
        top = min(top, q.b // q.a)
    for k in range(max(k_min, 1), top + 1):
        scan = coprime_in_interval(
            RationalBound.of(k * n, q.c), RationalBound.of(k * n, q.b), m_
        )
        m = scan.least_coprime
        if m is None:
            continue
        # the least coprime m minimises m*a, so one test decides this k
        if mode == "lemma23" or m * q.a < n:
            return Certificate("interval", m, q, k=k, mode=mode)
    return None


def _m_type_pair(q: NormalizedQuadruple, M: int) -> tuple[str, ...]:
    n = q.n
    got = []
    if 2 * residue(M * q.a, n) > n:
        got.append("a")
    if 2 * residue(M * q.b, n) > n:
        got.append("b")
    if 2 * residue(M * q.c, n) < n:
        got.append("c")
    return tuple(got)


def search_M(q: NormalizedQuadruple) -> Certificate | None:
    """Least unit M <= n/2e with at least two of |Ma|>n/2, |Mb|>n/2, |Mc|<n/2."""
    n = q.n
    if n % 2 == 0:
        return None
    for M in range(1, n // (2 * q.e) + 1):
        if gcd(M, n) != 1:
            continue
        pair = _m_type_pair(q, M)
        if len(pair) >= 2:
            return Certificate("m_type", M, q, pair=pair)
    return None


def small_a_applies(q: NormalizedQuadruple) -> bool:
    return q.a < 2 * q.e and q.b % q.a == 0 and q.n % q.a == 0


def _small_a_multipliers(q: NormalizedQuadruple) -> tuple[int, int, int, int]:
    n, a = q.n, q.a
    return ((n + a) // a, (n + 2 * a) // a, (n + 3 * a) // a, (n + 4 * a) // a)


def search_small_a(q: NormalizedQuadruple) -> Certificate | None:
    """Multiplier family (n + ja)/a for a < 2e with a | b.

    Takes (n+a)/a when it is a unit; otherwise picks by the range of b:
    b < n/4 -> (n+2a)/a, n/4 < b < n/3 -> (n+4a)/a, n/3 < b < n/2 -> (n+3a)/a.
    The chosen multiplier must send e, n-a and n-b above n/2.
    """
    if not small_a_applies(q):
        raise HypothesisViolation(
            f"needs a < 2e, a | b and a | n; got e={q.e}, b={q.b}, a={q.a}, n={q.n}"
        )
    n, b = q.n, q.b
    if n % 2 == 0:
        return None
    ms = _small_a_multipliers(q)
    if gcd(n, ms[0]) == 1:
        j = 0
    elif 4 * b < n:
        j = 1
    elif 3 * b < n:
        j = 3
    else:
        j = 2
    m = ms[j]
    if gcd(n, m) != 1:
        return None
    if all(2 * residue(m * x, n) > n for x in (q.e, n - q.a, n - q.b)):
        return Certificate("small_a", m, q, j=j)
    return None


def compute_k1(q: NormalizedQuadruple) -> int | None:
    """Largest k with ceil((k-1)n/c) = ceil((k-1)n/b) and an integer in [kn/c, kn/b).

    Defined only when ceil(n/c) = ceil(n/b).
    """
    n, b, c = q.n, q.b, q.c
    if _ceil_div(n, c) != _ceil_div(n, b):
        return None
    best = None
    for k in range(1, b + 1):
        if _ceil_div((k - 1) * n, c) == _ceil_div((k - 1) * n, b):
            if _ceil_div(k * n, c) < _ceil_div(k * n, b):
                best = k
        elif (k - 1) * n * (c - b) > b * c:
            # the gap (k-1)(n/b - n/c) exceeds 1 from here on
            break
    assert best is None or best <= b
    return best


def count_half_open(q: NormalizedQuadruple, j: int) -> int:
    """Number of integers in [jn/c, jn/b)."""
    return max(0, _ceil_div(j * q.n, q.b) - _ceil_div(j * q.n, q.c))


@dataclass(frozen=True)
class OmegaRow:
    t: int
    lo: RationalBound
    hi: RationalBound
    count: int
    coprime_count: int
    least_coprime: int | None


@dataclass(frozen=True)
class OmegaDiagnostics:
    s: int
    per_t: tuple[OmegaRow, ...]
    assumption_B_holds: bool
    k1: int | None
    m1: int
    l: int | None
    Nj_table: tuple[int, ...]
    half_step_counts: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "s": self.s,
            "per_t": [
                {"t": r.t, "lo": str(r.lo), "hi": str(r.hi), "count": r.count,
                 "coprime_count": r.coprime_count, "least_coprime": r.least_coprime}
                for r in self.per_t
            ],
            "assumption_B_holds": self.assumption_B_holds,
            "k1": self.k1,
            "m1": self.m1,
            "l": self.l,
            "Nj_table": list(self.Nj_table),
        }


def omega_diagnostics(q: NormalizedQuadruple) -> OmegaDiagnostics:
    n, b, c, s = q.n, q.b, q.c, q.s
    rows = []
    for t in range(s // 2):
        lo = RationalBound.of((2 * s - 2 * t - 1) * n, 2 * b)
        hi = RationalBound.of((s - t) * n, b)
        scan = coprime_in_interval(lo, hi, q.modulus)
        rows.append(OmegaRow(t, lo, hi, scan.count, scan.coprime_count, scan.least_coprime))
    # [(2s-t-1)n/2b, (2s-t)n/2b] for t in [0, s-1]: width n/2b > 1
    half_steps = []
    for t in range(s):
        first, last = integer_range(
            RationalBound.of((2 * s - t - 1) * n, 2 * b), RationalBound.of((2 * s - t) * n, 2 * b)
        )
        half_steps.append(max(0, last - first + 1))
    m1 = _ceil_div(n, c)
    l = None
    table: list[int] = []
    if m1 < _ceil_div(n, b):
        for j in range(1, b + 1):
            table.append(count_half_open(q, j))
            if table[-1] >= 4:
                l = j
                break
    return OmegaDiagnostics(
        s=s,
        per_t=tuple(rows),
        assumption_B_holds=all(r.coprime_count == 0 for r in rows),
        k1=compute_k1(q),
        m1=m1,
        l=l,
        Nj_table=tuple(table),
        half_step_counts=tuple(half_steps),
    )


@dataclass(frozen=True)
class RenumberFailure:
    reason: str
    branch: str = ""


def renumber_applies(q: NormalizedQuadruple) -> bool:
    return q.a in q.modulus.primes and q.a < 2 * q.e and q.c % q.a == 0


def _renumbered(q: NormalizedQuadruple, mult: int, e2: int, c2: int, pair: tuple[int, int],
                branch: str) -> NormalizedQuadruple | RenumberFailure:
    b2, a2 = max(pair), min(pair)
    try:
        out = NormalizedQuadruple(q.modulus, e2, c2, b2, a2,
                                  (q.normalizing_unit * mult) % q.n)
    except ValueError as exc:
        return RenumberFailure(f"renumbered coordinates invalid: {exc}", branch)
    if denormalize(out) != _scaled(q, mult):
        return RenumberFailure("renumbered quadruple is not the scaled sequence", branch)
    if a2 < 10 * e2:
        return RenumberFailure(f"conclusion a' >= 10e' fails: e'={e2}, a'={a2}", branch)
    return out


def _scaled(q: NormalizedQuadruple, mult: int) -> ResidueSeq:
    S = denormalize(q)
    return ResidueSeq(q.modulus, tuple(residue(mult * x, q.n) for x in S.terms))


def _halfplane_cert(q: NormalizedQuadruple, mult: int, branch: str) -> Certificate | RenumberFailure:
    if gcd(mult, q.n) != 1:
        return RenumberFailure(f"multiplier {mult} is not a unit", branch)
    cert = check_halfplane(denormalize(q), mult)
    if cert is None:
        return RenumberFailure(f"half-plane condition fails for multiplier {mult}", branch)
    return cert


def renumber(q: NormalizedQuadruple) -> Certificate | NormalizedQuadruple | RenumberFailure:
    """Either certify index 1 or rescale to a quadruple with a' >= 10e'.

    Requires a prime a dividing n and c, with a < 2e.  Only the branches of
    the known argument are followed; anything else comes back as a
    RenumberFailure naming the branch.
    """
    if not renumber_applies(q):
        return RenumberFailure(
            f"hypotheses unmet: need prime a | n, a | c, a < 2e (e={q.e}, c={q.c}, a={q.a})",
            "precondition",
        )
    n, e, c, b, a = q.n, q.e, q.c, q.b, q.a
    m = (n - a) // a
    if gcd(n, m) == 1:
        img_b = residue(m * (n - b), n)
        if 2 * img_b > n:
            return _halfplane_cert(q, m, "m")
        if not a < img_b:
            return RenumberFailure(f"expected a < |m(n-b)|_n, got {img_b}", "m")
        return _renumbered(q, m, a, img_b, (c, n - residue(m * e, n)), "m")
    if n % 2 == 0:
        return RenumberFailure("even n: (n + ja)/2a multipliers undefined", "gcd(n,m)>1")
    if (c // a) % 2 == 0:
        return _halfplane_cert(q, (n + a) // (2 * a), "c=2ta")
    m1 = (n - 2 * a) // a
    m2 = (n + 3 * a) // (2 * a)
    m3 = (n + 5 * a) // (2 * a)
    if 4 * c < n:
        if gcd(n, m1) != 1:
            return RenumberFailure(f"multiplier {m1} is not a unit", "c<n/4")
        img_b = residue(m1 * (n - b), n)
        if 2 * img_b > n:
            return _halfplane_cert(q, m1, "c<n/4")
        return _renumbered(q, m1, 2 * a, img_b, (2 * c, n - residue(m1 * e, n)), "c<n/4")
    if 3 * c < n:
        return _halfplane_cert(q, m3, "n/4<c<n/3")
    if 3 * c > n:
        return _halfplane_cert(q, m2, "c>n/3")
    return RenumberFailure("c = n/3 lies on a branch boundary", "boundary")

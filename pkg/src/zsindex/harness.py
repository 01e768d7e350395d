"""Verification waterfall, per-modulus sweeps and the Omega-interval audit.

The index recorded for every instance always comes from the full unit scan;
certificate strategies only explain *why* it is 1, and a strategy that fires
on an instance whose true index is not 1 is reported as a violation.
"""

from __future__ import annotations

import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable

import numpy as np

from .canon import NormalizedQuadruple, classify, normalize
from .certs import (
    Certificate,
    RenumberFailure,
    check_halfplane,
    check_sum_3n,
    compute_k1,
    omega_diagnostics,
    renumber,
    renumber_applies,
    search_interval,
    search_M,
    search_small_a,
    small_a_applies,
)
from .enumgen import EnumFilter, enumerate_normal_forms, enumerate_orbit_reps, orbit_partition
from .modarith import factorize
from .zseq import ResidueSeq, g_norm, g_norms, index, is_minimal_zero_sum

__all__ = [
    "STRATEGIES",
    "DEFAULT_ORDER",
    "WaterfallConfig",
    "InstanceRecord",
    "VerificationReport",
    "AuditResult",
    "verify_instance",
    "run_strategy",
    "verify_modulus",
    "sweep",
    "lemma29_audit",
    "first_audit_moduli",
    "find_min_index_at_least",
    "first_off_hypothesis_counterexample",
    "brute_force_transcript",
]

STRATEGIES = (
    "Direct",
    "SmallA",
    "Lemma22_1",
    "Lemma23",
    "Lemma22_2",
    "Renumber",
    "Notice1",
    "Notice2",
    "OracleOnly",
)
# Notice scans cover every unit up to the cap, so with the default cap they
# certify any index-1 instance; they run after the lemma searches.
DEFAULT_ORDER = STRATEGIES[:-1]
_QUAD_STRATEGIES = ("SmallA", "Lemma22_1", "Lemma23", "Lemma22_2")
# their certificates argue through 2m, so 2 must be a unit
_ODD_ONLY_STRATEGIES = ("SmallA", "Lemma22_2", "Notice2")


@dataclass(frozen=True)
class WaterfallConfig:
    order: tuple[str, ...] = DEFAULT_ORDER
    notice_cap: int = 10_000

    def __post_init__(self):
        bad = [s for s in self.order if s not in STRATEGIES or s == "OracleOnly"]
        if bad:
            raise ValueError(f"unknown strategies in waterfall order: {bad}")
        if len(set(self.order)) != len(self.order):
            raise ValueError(f"repeated strategy in waterfall order: {self.order}")
        if self.notice_cap < 1:
            raise ValueError(f"notice_cap must be positive, got {self.notice_cap}")


@dataclass
class InstanceRecord:
    sequence: ResidueSeq
    pattern: str
    index: int
    witness_unit: int
    normalized: NormalizedQuadruple | None
    strategy: str | None
    certificate: Certificate | None
    diagnostics: dict | None
    trace: list[tuple[str, str]] = field(default_factory=list)
    counterexample: bool = False
    unsound: bool = False

    def to_dict(self) -> dict:
        q = self.normalized
        return {
            "n": self.sequence.n,
            "sequence": list(self.sequence.terms),
            "pattern": self.pattern,
            "index": self.index,
            "witness_unit": self.witness_unit,
            "normalized": None if q is None else {"e": q.e, "c": q.c, "b": q.b, "a": q.a,
                                                  "unit": q.normalizing_unit},
            "strategy": self.strategy,
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
            "diagnostics": self.diagnostics,
            "trace": [{"strategy": s, "outcome": o} for s, o in self.trace],
            "counterexample": self.counterexample,
            "unsound": self.unsound,
        }


def _notice_units(S: ResidueSeq, cap: int) -> np.ndarray:
    u = S.modulus.unit_array
    return u[u <= min(S.n - 1, cap)]


def run_strategy(
    name: str, S: ResidueSeq, q: NormalizedQuadruple | None, config: WaterfallConfig | None = None
) -> tuple[Certificate | None, str]:
    """Run one waterfall stage; returns (certificate or None, outcome note)."""
    config = config or WaterfallConfig()
    n = S.n
    if name == "Direct":
        if g_norm(S, 1) == 1:
            return Certificate("multiplier", 1, S), "certified"
        return None, "no certificate"
    if name in _ODD_ONLY_STRATEGIES and n % 2 == 0:
        return None, "not applicable: needs odd n"
    if name in ("Notice1", "Notice2"):
        u = _notice_units(S, config.notice_cap)
        if name == "Notice1":
            sums = g_norms(S)[: u.size]
            hits = np.flatnonzero(sums == 3 * n)
            if hits.size:
                return check_sum_3n(S, int(u[hits[0]])), "certified"
            return None, "no certificate"
        res = (u[:, None] * np.asarray(S.terms, dtype=np.int64)) % n
        low = (2 * res <= n).sum(axis=1)
        high = (2 * res >= n).sum(axis=1)
        hits = np.flatnonzero((low <= 1) | (high <= 1))
        if hits.size:
            return check_halfplane(S, int(u[hits[0]])), "certified"
        return None, "no certificate"
    if q is None:
        return None, "not applicable: no normal form"
    if name == "SmallA":
        if not small_a_applies(q):
            return None, "not applicable: needs a < 2e, a | b, a | n"
        cert = search_small_a(q)
        return cert, "certified" if cert else "no certificate"
    if name == "Lemma22_1":
        cert = search_interval(q)
        return cert, "certified" if cert else "no certificate"
    if name == "Lemma23":
        cert = search_interval(q, mode="lemma23")
        return cert, "certified" if cert else "no certificate"
    if name == "Lemma22_2":
        cert = search_M(q)
        return cert, "certified" if cert else "no certificate"
    if name == "Renumber":
        if not renumber_applies(q):
            return None, "not applicable: needs prime a | n, a | c, a < 2e"
        out = renumber(q)
        if isinstance(out, Certificate):
            return out, "certified"
        if isinstance(out, RenumberFailure):
            return None, f"failure ({out.branch}): {out.reason}"
        # one renumbering only: the quadruple searches, no second Renumber
        for sub in _QUAD_STRATEGIES:
            cert, _ = run_strategy(sub, out.sequence(), out, config)
            if cert is not None:
                return cert, f"certified after renumbering via {sub}"
        return None, "renumbered, no certificate"
    raise ValueError(f"unknown strategy {name!r}")


def verify_instance(S: ResidueSeq, config: WaterfallConfig | None = None) -> InstanceRecord:
    config = config or WaterfallConfig()
    if len(S) != 4 or not is_minimal_zero_sum(S):
        raise ValueError(f"{S} is not a minimal zero-sum quadruple")
    truth = index(S)
    q = normalize(S)
    diag = None
    if q is not None:
        om = omega_diagnostics(q)
        diag = {"s": q.s, "k1": compute_k1(q), "assumption_B": om.assumption_B_holds}
    trace = []
    strategy = cert = None
    for name in config.order:
        c, note = run_strategy(name, S, q, config)
        trace.append((name, note))
        if c is not None:
            strategy, cert = name, c
            break
    unsound = cert is not None and (truth.value != 1 or not cert.validate())
    if cert is None and truth.value == 1:
        strategy = "OracleOnly"
        trace.append(("OracleOnly", "certified"))
    return InstanceRecord(
        sequence=S,
        pattern=classify(S).tag,
        index=truth.value,
        witness_unit=truth.witness_unit,
        normalized=q,
        strategy=strategy,
        certificate=cert,
        diagnostics=diag,
        trace=trace,
        counterexample=truth.value >= 2,
        unsound=unsound,
    )


@dataclass
class VerificationReport:
    n: int
    instances: int
    orbits: int
    unnormalizable: int
    index_histogram: dict[int, int]
    strategy_histogram: dict[str, int]
    violations: list[dict]
    elapsed_ms: int | None = None

    @property
    def max_index(self) -> int:
        return max((k for k, v in self.index_histogram.items() if v), default=0)

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "n": self.n,
            "totals": {"instances": self.instances, "orbits": self.orbits,
                       "unnormalizable": self.unnormalizable},
            "index_histogram": {str(k): v for k, v in sorted(self.index_histogram.items())},
            "strategy_histogram": dict(self.strategy_histogram),
            "violations": self.violations,
        }
        if timing:
            d["elapsed_ms"] = self.elapsed_ms
        return d

    @classmethod
    def from_dict(cls, d: dict) -> VerificationReport:
        t = d["totals"]
        return cls(
            n=d["n"],
            instances=t["instances"],
            orbits=t["orbits"],
            unnormalizable=t["unnormalizable"],
            index_histogram={int(k): v for k, v in d["index_histogram"].items()},
            strategy_histogram=dict(d["strategy_histogram"]),
            violations=list(d["violations"]),
            elapsed_ms=d.get("elapsed_ms"),
        )


def verify_modulus(
    n: int,
    f: EnumFilter | None = None,
    config: WaterfallConfig | None = None,
    records: list | None = None,
) -> VerificationReport:
    """Verify every orbit representative of Z_n.

    The index histogram is weighted by orbit size (it sums to the instance
    count); the strategy histogram counts representatives (it sums to the
    orbit count).  Pass a list as ``records`` to collect the InstanceRecords.
    """
    t0 = time.perf_counter()
    config = config or WaterfallConfig()
    ih: Counter[int] = Counter()
    sh = {name: 0 for name in STRATEGIES}
    sh["none"] = 0
    violations = []
    instances = orbits = unnorm = 0
    for rep, size in orbit_partition(n, f):
        rec = verify_instance(rep, config)
        if records is not None:
            records.append(rec)
        orbits += 1
        instances += size
        ih[rec.index] += size
        sh[rec.strategy or "none"] += 1
        if rec.normalized is None:
            unnorm += 1
        if rec.counterexample:
            violations.append({"kind": "index_ge_2", "sequence": list(rep.terms),
                               "index": rec.index, "orbit_size": size})
        if rec.unsound:
            violations.append({"kind": "unsound_certificate", "sequence": list(rep.terms),
                               "strategy": rec.strategy,
                               "certificate": rec.certificate.to_dict()})
    return VerificationReport(
        n=n,
        instances=instances,
        orbits=orbits,
        unnormalizable=unnorm,
        index_histogram=dict(ih),
        strategy_histogram=sh,
        violations=violations,
        elapsed_ms=round((time.perf_counter() - t0) * 1000),
    )


def _verify_task(args) -> VerificationReport:
    n, f, config = args
    return verify_modulus(n, f, config)


def sweep(
    n_lo: int,
    n_hi: int,
    f: EnumFilter | None = None,
    jobs: int = 1,
    include_all_n: bool = False,
    config: WaterfallConfig | None = None,
) -> list[VerificationReport]:
    """One report per n in [n_lo, n_hi] (gcd(n, 6) = 1 unless include_all_n).

    Work per n is sequential; moduli are distributed over ``jobs`` processes
    and results come back in ascending n regardless of completion order.
    """
    if not 5 <= n_lo <= n_hi:
        raise ValueError(f"need 5 <= n_lo <= n_hi, got [{n_lo}, {n_hi}]")
    ns = [n for n in range(n_lo, n_hi + 1) if include_all_n or gcd(n, 6) == 1]
    tasks = [(n, f, config) for n in ns]
    if jobs <= 1 or len(ns) <= 1:
        return [_verify_task(t) for t in tasks]
    # largest moduli first keeps the pool busy; map() preserves input order
    order = sorted(range(len(tasks)), key=lambda i: -ns[i])
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        done = list(pool.map(_verify_task, [tasks[i] for i in order], chunksize=1))
    out: list[VerificationReport | None] = [None] * len(tasks)
    for i, rep in zip(order, done):
        out[i] = rep
    return out  # type: ignore[return-value]


@dataclass
class AuditResult:
    findings: list[dict]
    examined: dict[int, int]
    s_ge_10: dict[int, int]

    def to_dict(self) -> dict:
        return {
            "moduli": sorted(self.examined),
            "examined": {str(k): v for k, v in sorted(self.examined.items())},
            "s_ge_10": {str(k): v for k, v in sorted(self.s_ge_10.items())},
            "findings": self.findings,
        }


def _audit_modulus_ok(n: int) -> bool:
    m = factorize(n)
    return gcd(n, 6) == 1 and m.squarefree and len(m.primes) == 3


def first_audit_moduli(above: int, count: int) -> list[int]:
    """The first ``count`` squarefree n = p1 p2 p3 > above with gcd(n, 6) = 1."""
    out = []
    n = above + 1
    while len(out) < count:
        if _audit_modulus_ok(n):
            out.append(n)
        n += 1
    return out


def lemma29_audit(n_set: Iterable[int]) -> AuditResult:
    """Check that s >= 10 forces an Omega interval with an integer coprime to n.

    Runs over every A1 coordinate tuple in normal shape with a > 2e.  Each
    tuple with s >= 10 and no coprime integer in any Omega interval becomes a
    finding; nothing is raised.
    """
    findings: list[dict] = []
    examined: dict[int, int] = {}
    big: dict[int, int] = {}
    for n in n_set:
        if not _audit_modulus_ok(n):
            raise ValueError(f"{n} is not a squarefree product of three primes coprime to 6")
        examined[n] = big[n] = 0
        for q in enumerate_normal_forms(n, pattern="A1", a_gt_2e=True):
            examined[n] += 1
            if q.s < 10:
                continue
            big[n] += 1
            om = omega_diagnostics(q)
            if om.assumption_B_holds:
                findings.append({"n": n, "e": q.e, "c": q.c, "b": q.b, "a": q.a, "s": q.s,
                                 "omega": om.to_dict()})
    return AuditResult(findings, examined, big)


def find_min_index_at_least(n: int, threshold: int) -> ResidueSeq | None:
    """Lexicographically least minimal zero-sum quadruple with index >= threshold.

    Orbit representatives are the least members of their orbits and come in
    ascending order, and the index is constant on orbits, so the first
    representative that qualifies is the answer.
    """
    if threshold not in (2, 3):
        raise ValueError("threshold must be 2 or 3")
    for rep in enumerate_orbit_reps(n):
        if index(rep).value >= threshold:
            return rep
    return None


def first_off_hypothesis_counterexample(n_lo: int = 5, n_hi: int = 50) -> ResidueSeq | None:
    """Ascending scan over n with gcd(n, 6) != 1 for an index-2 quadruple."""
    for n in range(max(n_lo, 5), n_hi + 1):
        if gcd(n, 6) == 1:
            continue
        S = find_min_index_at_least(n, 2)
        if S is not None:
            return S
    return None


def brute_force_transcript(S: ResidueSeq) -> dict:
    """Every proper subset sum and every unit's coefficient sum, for the record."""
    n, t = S.n, S.terms
    k = len(t)
    subsets = []
    for mask in range(1, (1 << k) - 1):
        idx = [i for i in range(k) if mask >> i & 1]
        total = sum(t[i] for i in idx)
        subsets.append({"terms": [t[i] for i in idx], "sum_mod_n": total % n})
    units = []
    for v in S.modulus.unit_array.tolist():
        res = [(v * x) % n for x in t]
        units.append({"unit": v, "residues": res, "sum": sum(res), "g_norm": sum(res) // n})
    return {
        "n": n,
        "sequence": list(t),
        "gcd_n_6": gcd(n, 6),
        "term_sum": sum(t),
        "proper_subset_sums": subsets,
        "units": units,
        "index": min(u["g_norm"] for u in units),
    }

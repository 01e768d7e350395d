"""Command-line interface.

Exit codes: 0 success, 1 a mathematical violation or counterexample was
found, 2 usage error.  JSON is the canonical output; CSV is a flat
projection with fixed columns; table is for people.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from math import gcd

from . import __version__
from .canon import classify, normalize
from .certs import search_interval
from .enumgen import EnumFilter, enumerate_quadruples, orbit_partition
from .harness import (
    DEFAULT_ORDER,
    STRATEGIES,
    WaterfallConfig,
    brute_force_transcript,
    find_min_index_at_least,
    first_audit_moduli,
    lemma29_audit,
    sweep,
    verify_instance,
)
from .modarith import factorize
from .zseq import ResidueSeq, index, is_minimal_zero_sum, is_zero_sum

PATTERNS = {"a1": "A1", "a2": "A2", "a3": "A3", "a4": "A4",
            "two-prime": "TwoPrimeOrFewer", "other": "Other"}

SWEEP_CSV_COLUMNS = (
    ["n", "instances", "orbits", "unnormalizable", "index_1", "index_2", "index_3", "violations"]
    + [f"strategy_{s}" for s in STRATEGIES]
    + ["strategy_none"]
)


class UsageError(Exception):
    pass


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def _table(rows: list[dict], columns: list[str]) -> str:
    cells = [[str(r.get(c, "")) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(x.ljust(w) for x, w in zip(row, widths)) for row in cells]
    return "\n".join(lines) + "\n"


def _emit(text: str, out_path: str | None):
    if out_path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out_path))
    if not os.path.isdir(directory):
        raise UsageError(f"output directory does not exist: {directory}")
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".zsindex-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, out_path)
    except OSError as exc:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise UsageError(f"cannot write {out_path}: {exc}") from exc


def _render(payload, rows, columns, fmt) -> str:
    if fmt == "json":
        return _dumps(payload)
    if fmt == "csv":
        return _csv(rows, columns)
    return _table(rows, columns)


def _sequence(args) -> ResidueSeq:
    if args.n < 2:
        raise UsageError(f"--n must be >= 2, got {args.n}")
    if not args.terms:
        raise UsageError("at least one term is required")
    bad = [x for x in args.terms if not 1 <= x <= args.n - 1]
    if bad:
        raise UsageError(f"terms must lie in [1, {args.n - 1}]: {bad}")
    return ResidueSeq.of(args.n, args.terms)


def _quadruple(args) -> ResidueSeq:
    S = _sequence(args)
    if len(S) != 4:
        raise UsageError("exactly four terms are required")
    if not is_minimal_zero_sum(S):
        raise UsageError(f"{list(S.terms)} is not a minimal zero-sum sequence mod {S.n}")
    return S


def cmd_index(args) -> int:
    S = _sequence(args)
    if len(S) > 4:
        raise UsageError("at most four terms are supported")
    zs = is_zero_sum(S)
    payload = {"n": S.n, "sequence": list(S.terms), "zero_sum": zs,
               "minimal": is_minimal_zero_sum(S), "nu": S.nu, "index": None,
               "witness_unit": None}
    if zs:
        r = index(S)
        payload["index"], payload["witness_unit"] = r.value, r.witness_unit
    else:
        payload["note"] = "not zero-sum"
    row = dict(payload, sequence=" ".join(map(str, S.terms)))
    cols = ["n", "sequence", "zero_sum", "minimal", "nu", "index", "witness_unit"]
    sys.stdout.write(_render(payload, [row], cols, args.format))
    return 0


def _pinned_interval(S: ResidueSeq, k: int, fmt: str) -> int:
    """Interval certificate at one fixed k, as the hand proofs choose it."""
    q = normalize(S)
    if q is None:
        raise UsageError("--k needs a quadruple with a normal form")
    if not 1 <= k <= q.b:
        raise UsageError(f"--k must lie in [1, b={q.b}]")
    cert = search_interval(q, k, k_min=k)
    payload = {"n": S.n, "sequence": list(S.terms), "k": k,
               "certificate": cert.to_dict() if cert else None,
               "valid": cert.validate() if cert else None}
    row = {"n": S.n, "k": k, "multiplier": cert.multiplier if cert else ""}
    sys.stdout.write(_render(payload, [row], ["n", "k", "multiplier"], fmt))
    return 0


def cmd_certify(args) -> int:
    S = _quadruple(args)
    if args.k is not None:
        return _pinned_interval(S, args.k, args.format)
    config = WaterfallConfig(notice_cap=args.notice_cap,
                             order=(args.strategy,) if args.strategy else DEFAULT_ORDER)
    rec = verify_instance(S, config)
    payload = rec.to_dict()
    if rec.counterexample:
        payload["counterexample"] = brute_force_transcript(S)
    rows = [{"strategy": s, "outcome": o} for s, o in rec.trace]
    if args.format == "table":
        head = (f"n={S.n} sequence={list(S.terms)} index={rec.index} "
                f"strategy={rec.strategy}\n")
        if rec.certificate is not None:
            head += f"certificate: {json.dumps(rec.certificate.to_dict())}\n"
        sys.stdout.write(head + _table(rows, ["strategy", "outcome"]))
    else:
        sys.stdout.write(_render(payload, rows, ["strategy", "outcome"], args.format))
    return 1 if rec.index >= 2 or rec.unsound else 0


def cmd_normalize(args) -> int:
    S = _quadruple(args)
    q = normalize(S)
    payload = {"n": S.n, "sequence": list(S.terms), "normalized": None}
    row = {"n": S.n, "sequence": " ".join(map(str, S.terms))}
    if q is not None:
        payload["normalized"] = {"e": q.e, "c": q.c, "b": q.b, "a": q.a, "s": q.s,
                                 "unit": q.normalizing_unit}
        row.update(payload["normalized"])
    cols = ["n", "sequence", "e", "c", "b", "a", "s", "unit"]
    sys.stdout.write(_render(payload, [row], cols, args.format))
    return 0


def cmd_classify(args) -> int:
    S = _sequence(args)
    if len(S) != 4:
        raise UsageError("exactly four terms are required")
    p = classify(S)
    payload = {"n": S.n, "sequence": list(S.terms),
               "gcds": [gcd(x, S.n) for x in S.terms], "tag": p.tag,
               "labeled_primes": list(p.labeled_primes) if p.labeled_primes else None}
    row = dict(payload, sequence=" ".join(map(str, S.terms)),
               gcds=" ".join(map(str, payload["gcds"])),
               labeled_primes=" ".join(map(str, p.labeled_primes or ())))
    cols = ["n", "sequence", "gcds", "tag", "labeled_primes"]
    sys.stdout.write(_render(payload, [row], cols, args.format))
    return 0


def _filter(args) -> EnumFilter:
    return EnumFilter(pattern=PATTERNS[args.pattern] if args.pattern else None,
                      require_normalizable=getattr(args, "normalizable", False))


def cmd_enumerate(args) -> int:
    if args.n < 5:
        raise UsageError("--n must be >= 5")
    f = _filter(args)
    items = []
    if args.orbits:
        for rep, size in orbit_partition(args.n, f):
            items.append({"sequence": list(rep.terms), "orbit_size": size})
            if args.limit and len(items) >= args.limit:
                break
    else:
        for S in enumerate_quadruples(args.n, f):
            items.append({"sequence": list(S.terms)})
            if args.limit and len(items) >= args.limit:
                break
    payload = {"n": args.n, "count": len(items), "items": items}
    rows = [{"n": args.n, "x1": it["sequence"][0], "x2": it["sequence"][1],
             "x3": it["sequence"][2], "x4": it["sequence"][3],
             "orbit_size": it.get("orbit_size", "")} for it in items]
    cols = ["n", "x1", "x2", "x3", "x4"] + (["orbit_size"] if args.orbits else [])
    _emit(_render(payload, rows, cols, args.format), args.out)
    return 0


def _sweep_row(d: dict) -> dict:
    row = {"n": d["n"], **d["totals"], "violations": len(d["violations"])}
    for k in ("1", "2", "3"):
        row[f"index_{k}"] = d["index_histogram"].get(k, 0)
    for s, v in d["strategy_histogram"].items():
        row[f"strategy_{s}"] = v
    return row


def cmd_sweep(args) -> int:
    if not 5 <= args.min_n <= args.max_n:
        raise UsageError("need 5 <= --min-n <= --max-n")
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    order = tuple(args.order.split(",")) if args.order else DEFAULT_ORDER
    try:
        config = WaterfallConfig(order=order, notice_cap=args.notice_cap)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    reports = sweep(args.min_n, args.max_n, _filter(args), jobs=args.jobs,
                    include_all_n=args.include_all_n, config=config)
    dicts = [r.to_dict(timing=args.timings) for r in reports]
    payload = {"min_n": args.min_n, "max_n": args.max_n, "include_all_n": args.include_all_n,
               "order": list(order), "notice_cap": args.notice_cap, "reports": dicts}
    _emit(_render(payload, [_sweep_row(d) for d in dicts], SWEEP_CSV_COLUMNS, args.format),
          args.out)
    return 1 if any(r.violations for r in reports) else 0


def cmd_audit(args) -> int:
    if args.n:
        ns = args.n
    else:
        ns = first_audit_moduli(args.first_above, args.count)
    try:
        result = lemma29_audit(ns)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    payload = result.to_dict()
    rows = [{"n": n, "examined": result.examined[n], "s_ge_10": result.s_ge_10[n],
             "findings": sum(1 for f in result.findings if f["n"] == n)} for n in ns]
    _emit(_render(payload, rows, ["n", "examined", "s_ge_10", "findings"], args.format), args.out)
    return 0


def cmd_find_counterexample(args) -> int:
    if args.n is not None:
        ns = [args.n]
    else:
        ns = range(args.min_n, args.max_n + 1)
    if any(n < 5 for n in ns):
        raise UsageError("moduli must be >= 5")
    found = None
    scanned = []
    for n in ns:
        if args.off_hypothesis and gcd(n, 6) == 1:
            continue
        scanned.append(n)
        S = find_min_index_at_least(n, args.threshold)
        if S is not None:
            found = S
            break
    payload = {"threshold": args.threshold, "scanned": scanned, "found": None}
    row = {"threshold": args.threshold, "n": "", "sequence": ""}
    if found is not None:
        payload["found"] = brute_force_transcript(found)
        row.update(n=found.n, sequence=" ".join(map(str, found.terms)))
    _emit(_render(payload, [row], ["threshold", "n", "sequence"], args.format), args.out)
    return 1 if found is not None else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zsindex", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp):
        sp.add_argument("--format", choices=("json", "csv", "table"), default="json")

    def seq(sp):
        sp.add_argument("--n", type=int, required=True, help="group order")
        sp.add_argument("terms", type=int, nargs="+", help="coefficients in [1, n-1]")
        fmt(sp)

    sp = sub.add_parser("index", help="index of a sequence of length <= 4")
    seq(sp)
    sp.set_defaults(func=cmd_index)

    sp = sub.add_parser("certify", help="run the certificate waterfall on a quadruple")
    seq(sp)
    sp.add_argument("--strategy", choices=DEFAULT_ORDER, help="run only this strategy")
    sp.add_argument("--k", type=int, help="interval certificate at this k only")
    sp.add_argument("--notice-cap", type=int, default=10_000)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("normalize", help="normal form (e, c, b, a) of a quadruple")
    seq(sp)
    sp.set_defaults(func=cmd_normalize)

    sp = sub.add_parser("classify", help="gcd pattern (A1)-(A4) of a quadruple")
    seq(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("enumerate", help="list minimal zero-sum quadruples")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--pattern", choices=sorted(PATTERNS))
    sp.add_argument("--normalizable", action="store_true")
    sp.add_argument("--orbits", action="store_true", help="one representative per unit orbit")
    sp.add_argument("--limit", type=int, default=0, help="stop after this many (0 = all)")
    sp.add_argument("--out")
    fmt(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("sweep", help="verify every orbit for each n in a range")
    sp.add_argument("--min-n", type=int, required=True)
    sp.add_argument("--max-n", type=int, required=True)
    sp.add_argument("--pattern", choices=sorted(PATTERNS))
    sp.add_argument("--normalizable", action="store_true")
    sp.add_argument("--include-all-n", action="store_true",
                    help="also sweep n with gcd(n, 6) != 1")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--order", help="comma-separated waterfall order "
                    f"(default {','.join(DEFAULT_ORDER)})")
    sp.add_argument("--notice-cap", type=int, default=10_000)
    sp.add_argument("--timings", action="store_true",
                    help="include elapsed_ms (makes output run-dependent)")
    sp.add_argument("--out")
    fmt(sp)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("audit", help="Omega-interval audit for A1 quadruples with a > 2e")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=int, nargs="+")
    g.add_argument("--first-above", type=int)
    sp.add_argument("--count", type=int, default=5)
    sp.add_argument("--out")
    fmt(sp)
    sp.set_defaults(func=cmd_audit)

    sp = sub.add_parser("find-counterexample", help="least quadruple with index >= threshold")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=int)
    g.add_argument("--min-n", type=int)
    sp.add_argument("--max-n", type=int)
    sp.add_argument("--threshold", type=int, choices=(2, 3), default=2)
    sp.add_argument("--off-hypothesis", action="store_true",
                    help="scan only n with gcd(n, 6) != 1")
    sp.add_argument("--out")
    fmt(sp)
    sp.set_defaults(func=cmd_find_counterexample)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "min_n", None) is not None and getattr(args, "max_n", 0) is None:
        parser.error("--min-n needs --max-n")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"zsindex {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

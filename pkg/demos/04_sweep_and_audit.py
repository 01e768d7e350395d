"""
Sweeping moduli and auditing the Omega intervals
================================================

The harness runs every orbit representative through the certificate
waterfall, with the brute-force index as ground truth.
"""

from collections import Counter

from zsindex import lemma29_audit, sweep, verify_instance
from zsindex.harness import first_audit_moduli, first_off_hypothesis_counterexample

# %%
reports = sweep(5, 80)
strategies = Counter()
for r in reports:
    strategies.update({k: v for k, v in r.strategy_histogram.items() if v})
print("moduli:", [r.n for r in reports])
print("violations:", sum(len(r.violations) for r in reports))
print("first certifying strategy per orbit:", dict(strategies))

# %%
# The same sweep over all n shows index 2 as soon as gcd(n, 6) != 1.
S = first_off_hypothesis_counterexample()
rec = verify_instance(S)
print(S, "index", rec.index)
for name, note in rec.trace:
    print(f"  {name:10s} {note}")

# %%
ns = first_audit_moduli(1000, 5)
audit = lemma29_audit(ns)
print("audited:", audit.examined, "with s >= 10:", audit.s_ge_10, "findings:", len(audit.findings))

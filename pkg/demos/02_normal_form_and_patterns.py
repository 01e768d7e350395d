"""
Normal form and gcd patterns
============================

Every quadruple handled by the certificate searches is first rescaled to
(e, c, n-b, n-a) with e + c = a + b and e < a <= b < c < n/2.
"""

from zsindex import ResidueSeq, classify, denormalize, normalize, unit_equivalent
from zsindex.enumgen import EnumFilter, enumerate_orbit_reps

# %%
for n, terms in [(1235, (13, 285, 975, 1197)), (2635, (17, 510, 2170, 2573)),
                 (1001, (11, 182, 847, 962))]:
    S = ResidueSeq.of(n, terms)
    q = normalize(S)
    p = classify(S)
    print(n, q.coords, "s =", q.s, p.tag, "(p1, p2, p3) =", p.labeled_primes)

# %%
# A normal form found after a nontrivial unit still describes the same orbit.
S = ResidueSeq.of(77, (1, 5, 35, 36))
q = normalize(S)
print(S, "->", q, "via unit", q.normalizing_unit)
print("unit-equivalent:", unit_equivalent(S, denormalize(q)))

# %%
# Some orbits have no normal form at all; repeated terms are the usual cause.
missing = [R.terms for R in enumerate_orbit_reps(35) if normalize(R) is None]
print(len(missing), "of the orbit representatives mod 35 have no normal form:", missing[:5])

# %%
# Pattern counts over the A1 family for one modulus.
print(sum(1 for _ in enumerate_orbit_reps(385, EnumFilter(pattern="A1"))), "A1 orbits mod 385")

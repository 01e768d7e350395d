"""
Certificates of index 1
=======================

A certificate is a multiplier plus the condition it satisfies.  It can be
checked on its own and cross-checked against the full index computation.
"""

from zsindex import ResidueSeq, normalize
from zsindex.canon import NormalizedQuadruple
from zsindex.certs import (
    check_halfplane,
    check_sum_3n,
    omega_diagnostics,
    renumber,
    search_interval,
    search_M,
    search_small_a,
)

S = ResidueSeq.of(2635, (17, 510, 2170, 2573))
q = normalize(S)

# %%
# The least interval certificate, and the one at k = 6 that a hand argument picks.
least = search_interval(q)
pinned = search_interval(q, 6, k_min=6)
for cert in (least, pinned):
    print(f"k={cert.k} m={cert.multiplier} holds={cert.holds()} valid={cert.validate()}")

# %%
# Complement and half-plane certificates.
print(check_sum_3n(S, S.n - 32))
print(search_M(q))
print(check_halfplane(ResidueSeq.of(1235, (13, 285, 975, 1197)), 1))  # None: two on each side

# %%
# Small a: the family (n + ja)/a when a < 2e and a divides b and n.
print(search_small_a(NormalizedQuadruple.of(1495, 13, 585, 575, 23)))

# %%
# Renumbering rescales to a quadruple with a' >= 10e', or certifies directly.
print(renumber(NormalizedQuadruple.of(2255, 30, 451, 440, 41)))
print(renumber(NormalizedQuadruple.of(1295, 35, 555, 553, 37)))

# %%
# Omega-interval diagnostics for a quadruple with large s.
d = omega_diagnostics(NormalizedQuadruple.of(1001, 11, 182, 154, 39))
print("s:", d.s, "m1:", d.m1, "l:", d.l, "N_j:", d.Nj_table)

"""
Computing the index of a zero-sum sequence
==========================================

Residues live in [1, n].  The index of a zero-sum sequence is the smallest
coefficient sum, divided by n, over all ways of writing it with a unit
multiplier.
"""

from zsindex import ResidueSeq, g_norm, index, is_minimal_zero_sum, is_zero_sum

# %%
# A quadruple over Z_1235 whose terms add up to 2n.
S = ResidueSeq.of(1235, (13, 285, 975, 1197))
print(S, "zero-sum:", is_zero_sum(S), "nu:", S.nu, "minimal:", is_minimal_zero_sum(S))

# %%
# The unit 18 brings the coefficient sum down to n, so the index is 1.
print("18*S residues:", [(18 * x) % S.n for x in S.terms], "g-norm:", g_norm(S, 18))
result = index(S)
print("index:", result.value, "least witness unit:", result.witness_unit)

# %%
# Multiplying by n - v mirrors every residue, so the g-norms pair up to 4.
for v in (1, 9, 18):
    print(v, g_norm(S, v), S.n - v, g_norm(S, S.n - v))

# %%
# Outside gcd(n, 6) = 1 the index can be 2.
T = ResidueSeq.of(6, (1, 3, 4, 4))
print(T, "index:", index(T).value)

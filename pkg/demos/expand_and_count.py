"""Expand the t-Schur overpartition series and compare with brute-force counts."""
from overschur import expand
from overschur.combinatorics import schur_over_oracle

for t in (3, 5, 9):
    s = expand(f"schur_over({t})", 16)
    brute = [schur_over_oracle(t, n) for n in range(16)]
    print(f"t={t}  series {s.tolist()}")
    print(f"      counted {brute}  {'ok' if brute == s.tolist() else 'MISMATCH'}")

# the same expansion reduced mod 4 shows the sparse residue-2 pattern
print(expand("schur_over(3)", 40, 4).tolist())

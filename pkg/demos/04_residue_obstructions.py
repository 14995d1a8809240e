"""
Residue coverage and obstruction certificates
=============================================

If no sum of at most k signed smooth terms hits some class r mod m, every
n = r (mod m) needs more than k terms.
"""

from smoothsum import make_prime_set
from smoothsum.obstruction import (coverage_bound_check, find_obstruction, power_residues,
                                   sumset_coverage, verify_certificate)

P = make_prime_set([2, 3])

print(sorted(power_residues(2, 12)), sorted(power_residues(3, 252)))

for k in (1, 2, 3):
    cov = sumset_coverage(P, k, 252, signed=True)
    print(f"k={k}: {len(cov)}/252 residues covered, first gap {cov.first_missing()}")

# %%
print(coverage_bound_check(P, 2, 252))

# %%
# Search for certificates; each one is re-checked by exact signed search.
for k in (1, 2):
    cert = verify_certificate(find_obstruction(P, k, budget=300))
    print(cert.to_json())

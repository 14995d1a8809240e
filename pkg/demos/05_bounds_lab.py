"""
Closed-form bounds next to computed values
==========================================

All bounds are evaluated in log space.  Their constants are unknown, so the
comparison reports margins and fitted constants rather than verdicts on the
theorems themselves.
"""

import json

from smoothsum import make_prime_set
from smoothsum.bounds import (count_smooth_bound_check, empirical_report, eval_bounds,
                              representable_count_signed, sieve_count_coprime)

P = make_prime_set([2, 3])

rep = eval_bounds(500_000, 2, 1.0, {"C_pm": 16})
for e in rep.entries:
    print(e.name, e.log_bound, e.loglog_bound)

# %%
print(json.dumps(empirical_report(P, k_max=4, N_limit=50_000, signed_k_max=3), indent=1)[:2000])

# %%
rows, C6 = count_smooth_bound_check(P, [10**e for e in range(1, 13)])
print("least C6 with #(A u {0}) <= (C6 log n)^2 on the sample:", C6)
print(sieve_count_coprime(P, 10**4))
print(representable_count_signed(P, 2, 10**4))

"""
F(k) and F_pm(k) at desk scale
==============================

F(k) is the least n that is not a sum of at most k smooth numbers; F_pm(k)
allows subtraction as well.  Both are computed exactly up to a limit.
"""

import math

from smoothsum import make_prime_set
from smoothsum.repr_exact import build_min_terms, f_values, lower_exponents
from smoothsum.repr_signed import SignedReach, f_pm_of_k, min_terms_signed

P = make_prime_set([2, 3])
N = 10**6

table = build_min_terms(P, N, term_cap=6)
F = f_values(P, 5, N, table)
print("F(1..5) =", F)                      # None: above the limit
print("c(k) = log F(k) / (k log k):", lower_exponents(F))

# %%
# Signed values.  B = N**2 bounds the size of each term; with that bound the
# result is flagged certified (exact under the magnitude-bound hypothesis).
reach = SignedReach(P, N * N)
for k in range(1, 5):
    print(k, f_pm_of_k(P, k, N, table=table, reach=reach))

# %%
# A witness for a signed representation, and its minimality.
for n in (103, 4985):
    r = min_terms_signed(P, n, B=n * n, length_cap=4)
    print(n, r.length, [t.value for t in r.terms], "certified" if r.certified else "")

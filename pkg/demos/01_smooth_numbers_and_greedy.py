"""
Smooth numbers, gaps and the greedy decomposition
=================================================

The {2, 3}-smooth numbers thin out, but slowly enough that subtracting the
largest one below n leaves a remainder that is a small fraction of n.
"""

from smoothsum import make_prime_set, enumerate_smooth, greedy_decompose, gap_statistics
from smoothsum.bounds import greedy_comparison

P = make_prime_set([2, 3])
print([a.value for a in enumerate_smooth(P, 100)])

# each term is the largest smooth number not above the running remainder
for n in (23, 1000, 123456789, 10**30 + 7):
    terms = greedy_decompose(P, n)
    print(n, "=", " + ".join(str(a.value) for a in terms))

# %%
# The worst relative gap gap(n)/n shrinks as the range moves up.
for lo, hi in [(10, 100), (100, 1000), (10**4, 10**5), (10**5, 10**6)]:
    _, s = gap_statistics(P, lo, hi, records=False)
    print(f"[{lo}, {hi}]  max gap/n = {s.max_relative_gap:.4f} at n = {s.max_relative_gap_at}")

# %%
# Greedy length against 2 log n / (c1 log log n) + sqrt(log n) / log c2.
rows, fitted_c1 = greedy_comparison(P, [10**e for e in range(3, 19, 3)])
for r in rows:
    print(r)
print("largest c1 still dominating every observed length:", fitted_c1)

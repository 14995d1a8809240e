"""
Moduli with a small Carmichael function
=======================================

Taking every prime q with (q - 1) | lcm(1..y) gives a modulus whose lambda
divides lcm(1..y) while the modulus itself is enormous.
"""

import math

from smoothsum.carmichael import carmichael_lambda, eps_construct, find_small_lambda_window
from smoothsum.bounds import lambda_lower_sample

print(carmichael_lambda(15), carmichael_lambda(27720))

for y in (4, 6, 10, 14, 20):
    r = eps_construct(y)
    lm = math.log(r.m)
    print(f"y={y:2d} L={r.smooth_exponent_L:>10d} lambda={r.lam:>10d} "
          f"log m={lm:8.1f}  log lambda / log log m = {math.log(r.lam) / math.log(lm):.2f}")

# %%
# Search a window log i <= log m <= (log i)^3 for lambda(m) < (log m)^(3 logloglog m).
for i in (10**3, 10**6, 10**30):
    r = find_small_lambda_window(i, C3=3, C4=3)
    print(i, "->", "none" if r is None else f"m with {len(str(r.m))} digits, lambda={r.lam}")

# %%
# The other direction is only sampled: the smallest normalised log lambda up to M.
print(lambda_lower_sample(10**5))

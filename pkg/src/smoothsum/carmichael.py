"""Factorization, the Carmichael function and moduli with unusually small lambda.

Everything here works on exact Python integers; moduli produced by
:func:`eps_construct` routinely run to hundreds of digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import List, Optional, Tuple

from .errors import ResourceLimitError

__all__ = [
    "Factorization",
    "LambdaSearchResult",
    "is_prime",
    "factorize",
    "carmichael_lambda",
    "lambda_from_factors",
    "eps_construct",
    "find_small_lambda_window",
    "small_lambda_holds",
    "lambda_sieve",
    "divisors_from_factors",
]

_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41]
_TRIAL_LIMIT = 1000
_RHO_ITERATIONS = 1 << 22


@dataclass(frozen=True)
class Factorization:
    m: int
    factors: Tuple[Tuple[int, int], ...]

    @property
    def primes(self):
        return [q for q, _ in self.factors]

    @property
    def max_exponent(self):
        return max((a for _, a in self.factors), default=0)

    def __str__(self):
        if not self.factors:
            return "1"
        return "*".join(f"{q}^{a}" if a > 1 else str(q) for q, a in self.factors)


@dataclass(frozen=True)
class LambdaSearchResult:
    m: int
    lam: int
    window_low: Optional[int]
    window_high: Optional[int]
    smooth_exponent_L: Optional[int]
    factors: Tuple[Tuple[int, int], ...] = ()


def is_prime(n: int) -> bool:
    """Miller-Rabin with the first 13 prime bases.

    Deterministic for n < 3.3e24; above that the fixed bases make it a
    reproducible strong-probable-prime test.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n: int) -> int:
    # Pollard-Brent with fixed seeds so factorizations are reproducible.
    if n % 2 == 0:
        return 2
    for c in range(1, 64):
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        m = 128
        steps = 0
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
            steps += r
            if steps > _RHO_ITERATIONS:
                break
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    raise ResourceLimitError(f"could not split {n} within the iteration cap")


def factorize(m: int) -> Factorization:
    """Exact prime factorization: trial division, then Pollard-Brent."""
    if m < 1:
        raise ValueError("factorize needs m >= 1")
    counts = {}
    n = m
    for p in range(2, _TRIAL_LIMIT):
        if p * p > n:
            break
        while n % p == 0:
            counts[p] = counts.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        x = stack.pop()
        if is_prime(x):
            counts[x] = counts.get(x, 0) + 1
            continue
        r = math.isqrt(x)
        if r * r == x:
            stack += [r, r]
            continue
        d = _brent(x)
        stack += [d, x // d]
    return Factorization(m, tuple(sorted(counts.items())))


def lambda_from_factors(factors) -> int:
    """lcm of the prime-power parts of lambda."""
    parts = []
    for q, a in factors:
        if q == 2:
            parts.append(1 if a == 1 else 2 if a == 2 else 1 << (a - 2))
        else:
            parts.append(q ** (a - 1) * (q - 1))
    return reduce(math.lcm, parts, 1)


def carmichael_lambda(m: int) -> int:
    """Least e >= 1 with b**e == 1 (mod m) for every b coprime to m."""
    return lambda_from_factors(factorize(m).factors)


def divisors_from_factors(factors) -> List[int]:
    divs = [1]
    for q, a in factors:
        divs = [d * q**e for d in divs for e in range(a + 1)]
    return sorted(divs)


def _lcm_upto(y: int) -> int:
    return reduce(math.lcm, range(1, y + 1), 1)


def _eps_primes(L: int) -> List[int]:
    return [d + 1 for d in divisors_from_factors(factorize(L).factors) if is_prime(d + 1)]


def eps_construct(y: int) -> LambdaSearchResult:
    """Product of all primes q with (q - 1) | lcm(1..y).

    The modulus is squarefree, so lambda(m) = lcm(q - 1) divides L.
    """
    if y < 2:
        raise ValueError("eps_construct needs y >= 2")
    L = _lcm_upto(y)
    qs = _eps_primes(L)
    m = math.prod(qs)
    factors = tuple((q, 1) for q in qs)
    return LambdaSearchResult(m, lambda_from_factors(factors), None, None, L, factors)


def _log_loglog_lll(m: int):
    lm = math.log(m)
    llm = math.log(lm)
    return lm, llm, math.log(llm) if llm > 0 else float("-inf")


def small_lambda_holds(m: int, lam: int, C4: float) -> bool:
    """lambda < (log m)**(C4 * logloglog m), compared in log space."""
    _, llm, lllm = _log_loglog_lll(m)
    if not lllm > 0:
        return False
    return math.log(lam) < C4 * lllm * llm


def find_small_lambda_window(i: int, C3: float = 3.0, C4: float = 3.0,
                             budget: int = 20000, max_y: int = 40,
                             scan_limit: int = 10**12) -> Optional[LambdaSearchResult]:
    """Find m with log i <= log m <= (log i)**C3 and small lambda(m).

    Two candidate sources are merged: a blind upward scan from ``i`` (only
    while ``i <= scan_limit``, since it needs full factorizations) and
    products of primes q with (q - 1) | d for divisors d of lcm(1..y).
    The scan returns the smallest qualifying m outright.  Otherwise y grows
    until some product qualifies, and the smallest qualifying candidate of
    that y is returned.  ``None`` when the budget runs out first.
    """
    if i < 16:
        raise ValueError("need i >= 16 so that logloglog i > 0")
    log_lo = math.log(i)
    log_hi = log_lo ** C3
    best = None

    def consider(m, factors, L=None):
        nonlocal best
        if m < i or math.log(m) > log_hi:
            return
        if best is not None and m >= best.m:
            return
        lam = lambda_from_factors(factors)
        if small_lambda_holds(m, lam, C4):
            best = LambdaSearchResult(m, lam, i, None, L, tuple(factors))

    spent = 0
    if i <= scan_limit:
        # the upward scan meets the smallest qualifying m first
        m = i
        while spent < budget // 2 and math.log(m) <= log_hi:
            consider(m, factorize(m).factors)
            spent += 1
            if best is not None:
                break
            m += 1
    seen = set()
    for y in range(2, max_y + 1):
        if best is not None:
            break
        L = _lcm_upto(y)
        Q = _eps_primes(L)
        for d in divisors_from_factors(factorize(L).factors):
            if d in seen:
                continue
            seen.add(d)
            if spent >= budget:
                break
            qs = [q for q in Q if d % (q - 1) == 0]
            prod = 1
            for j, q in enumerate(qs):
                prod *= q
                if prod >= i:
                    consider(prod, [(p, 1) for p in qs[: j + 1]], L)
                    break
            consider(math.prod(qs), [(p, 1) for p in qs], L)
            spent += 1
    if best is None:
        return None
    hi = math.exp(log_hi) if log_hi < 700 else None
    return LambdaSearchResult(best.m, best.lam, i, int(hi) if hi else None,
                              best.smooth_exponent_L, best.factors)


def lambda_sieve(M: int):
    """lambda(m) for every m <= M via a smallest-prime-factor sieve."""
    import numpy as np

    spf = np.zeros(M + 1, dtype=np.int64)
    for p in range(2, M + 1):
        if spf[p] == 0:
            spf[p::p][spf[p::p] == 0] = p
    lam = [0, 1] + [0] * (M - 1)
    for m in range(2, M + 1):
        p = int(spf[m])
        n, a = m, 0
        while n % p == 0:
            n //= p
            a += 1
        lam[m] = math.lcm(lam[n], lambda_from_factors([(p, a)]))
    return lam

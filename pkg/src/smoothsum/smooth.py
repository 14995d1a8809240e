"""The prime set P and the multiplicative semigroup A of P-smooth numbers.

A contains 1 (the empty product), so every n >= 1 has a largest element of
A below it and the greedy decomposition always terminates.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Tuple

import numpy as np

from .carmichael import is_prime
from .errors import ResourceLimitError

__all__ = [
    "PrimeSet",
    "SmoothNumber",
    "GapRecord",
    "GapSummary",
    "VALUE_CAP",
    "DEFAULT_ELEMENT_CAP",
    "make_prime_set",
    "enumerate_smooth",
    "smooth_values",
    "is_smooth",
    "largest_smooth_leq",
    "greedy_decompose",
    "greedy_lengths",
    "gap_statistics",
    "count_smooth_upto",
]

VALUE_CAP = 2**63 - 1
DEFAULT_ELEMENT_CAP = 10_000_000


@dataclass(frozen=True)
class PrimeSet:
    primes: Tuple[int, ...]

    @property
    def t(self) -> int:
        return len(self.primes)

    @property
    def product(self) -> int:
        return math.prod(self.primes)

    def __iter__(self):
        return iter(self.primes)

    def __str__(self):
        return ",".join(map(str, self.primes))


@dataclass(frozen=True, order=True)
class SmoothNumber:
    value: int
    exponents: Tuple[int, ...] = field(compare=False)

    def __int__(self):
        return self.value


@dataclass(frozen=True)
class GapRecord:
    n: int
    predecessor: int
    gap: int


@dataclass(frozen=True)
class GapSummary:
    lo: int
    hi: int
    stride: int
    count: int
    max_gap: int
    max_gap_at: int
    max_relative_gap: float
    max_relative_gap_at: int


def make_prime_set(primes: Iterable[int]) -> PrimeSet:
    """Validate, sort and deduplicate a list of primes (at least two distinct)."""
    primes = list(primes)
    if not primes:
        raise ValueError("prime list is empty")
    for p in primes:
        if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
            raise ValueError(f"{p} is not prime")
    ps = tuple(sorted({int(p) for p in primes}))
    if len(ps) < 2:
        raise ValueError("need at least two distinct primes")
    return PrimeSet(ps)


def _vec(P: PrimeSet, i: int, base: Tuple[int, ...]) -> Tuple[int, ...]:
    return base[:i] + (base[i] + 1,) + base[i + 1:]


def enumerate_smooth(P: PrimeSet, N: int, cap: int = DEFAULT_ELEMENT_CAP) -> List[SmoothNumber]:
    """All elements of A in [1, N], increasing, with exponent vectors.

    Dijkstra-style merge: one pointer per prime into the output so far; the
    next element is the smallest p_i * out[ptr_i].  Equal candidates from
    several primes advance together, which removes duplicates.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if N > VALUE_CAP:
        raise OverflowError(f"N={N} exceeds the value cap {VALUE_CAP}")
    out = [SmoothNumber(1, (0,) * P.t)]
    ptr = [0] * P.t
    nxt = [p for p in P.primes]
    while True:
        v = min(nxt)
        if v > N:
            return out
        if len(out) >= cap:
            raise ResourceLimitError(f"more than {cap} smooth numbers up to {N}")
        exps = None
        for i, p in enumerate(P.primes):
            if nxt[i] == v:
                if exps is None:
                    exps = _vec(P, i, out[ptr[i]].exponents)
                ptr[i] += 1
                nxt[i] = p * out[ptr[i]].value if ptr[i] < len(out) else p * v
        out.append(SmoothNumber(v, exps))


def smooth_values(P: PrimeSet, N: int, cap: int = DEFAULT_ELEMENT_CAP) -> np.ndarray:
    """Sorted int64 array of the elements of A in [1, N]."""
    if N > VALUE_CAP:
        raise OverflowError(f"N={N} exceeds the value cap {VALUE_CAP}")
    vals = [1]
    for p in P.primes:
        ext = []
        for v in vals:
            v *= p
            while v <= N:
                ext.append(v)
                v *= p
        vals += ext
        if len(vals) > cap:
            raise ResourceLimitError(f"more than {cap} smooth numbers up to {N}")
    return np.array(sorted(vals), dtype=np.int64)


def is_smooth(P: PrimeSet, n: int) -> Optional[Tuple[int, ...]]:
    """Exponent vector of n if n is in A, else None."""
    if n < 1:
        raise ValueError("n must be >= 1")
    exps = []
    for p in P.primes:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        exps.append(e)
    return tuple(exps) if n == 1 else None


def largest_smooth_leq(P: PrimeSet, n: int) -> SmoothNumber:
    """max{a in A : a <= n}, by descent over exponent vectors.

    The first t-1 exponents are enumerated; the last prime is raised as far
    as it fits.  Work is about (log n)**(t-1), independent of the count of
    A below n, so huge n are fine.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    *head, last = P.primes
    best_v, best_e = 0, None

    def descend(i, v, exps):
        nonlocal best_v, best_e
        if i == len(head):
            e, w = 0, v
            while w * last <= n:
                w *= last
                e += 1
            if w > best_v:
                best_v, best_e = w, exps + (e,)
            return
        p = head[i]
        e = 0
        while v <= n:
            descend(i + 1, v, exps + (e,))
            v *= p
            e += 1

    descend(0, 1, ())
    return SmoothNumber(best_v, best_e)


def greedy_decompose(P: PrimeSet, n: int) -> List[SmoothNumber]:
    """Repeatedly subtract the largest element of A not above the remainder."""
    if n < 1:
        raise ValueError("n must be >= 1")
    terms = []
    while n:
        a = largest_smooth_leq(P, n)
        terms.append(a)
        n -= a.value
    return terms


def greedy_lengths(P: PrimeSet, N: int) -> np.ndarray:
    """Greedy term count for every n in [0, N] (index 0 holds 0)."""
    A = smooth_values(P, N)
    n = np.arange(N + 1, dtype=np.int64)
    pred = A[np.searchsorted(A, n, side="right") - 1]
    pred[0] = 0
    rem = n - pred
    out = np.zeros(N + 1, dtype=np.int32)
    # rem[n] < n, so one pass in increasing n suffices; done level by level
    # to stay vectorised.
    done = np.zeros(N + 1, dtype=bool)
    done[0] = True
    while not done.all():
        ready = ~done & done[rem]
        out[ready] = out[rem[ready]] + 1
        done |= ready
    return out


def _gap_chunk(args):
    primes, ns = args
    P = PrimeSet(primes)
    hi = int(ns[-1])
    A = smooth_values(P, hi)
    pred = A[np.searchsorted(A, ns, side="right") - 1]
    return pred


def gap_statistics(P: PrimeSet, lo: int, hi: int, stride: int = 1,
                   workers: int = 1, max_samples: int = 50_000_000,
                   records: bool = True):
    """Gap n - (largest a in A with a <= n) over n = lo, lo+stride, ..., <= hi.

    Returns ``(records, summary)``; pass ``records=False`` to skip building
    the per-n list for big ranges.  The result does not depend on
    ``workers``.
    """
    if not 1 <= lo <= hi:
        raise ValueError("need 1 <= lo <= hi")
    if stride < 1:
        raise ValueError("stride must be >= 1")
    ns = np.arange(lo, hi + 1, stride, dtype=np.int64)
    if len(ns) > max_samples:
        raise ResourceLimitError(f"{len(ns)} samples exceed the cap {max_samples}")
    if workers > 1 and len(ns) > 1:
        chunks = np.array_split(ns, workers)
        with ProcessPoolExecutor(workers) as ex:
            preds = list(ex.map(_gap_chunk, [(P.primes, c) for c in chunks if len(c)]))
        pred = np.concatenate(preds)
    else:
        pred = _gap_chunk((P.primes, ns))
    gaps = ns - pred
    rel = gaps / ns
    ig, ir = int(np.argmax(gaps)), int(np.argmax(rel))
    summary = GapSummary(lo, hi, stride, len(ns), int(gaps[ig]), int(ns[ig]),
                         float(rel[ir]), int(ns[ir]))
    recs = None
    if records:
        recs = [GapRecord(int(n), int(p), int(g)) for n, p, g in zip(ns, pred, gaps)]
    return recs, summary


def count_smooth_upto(P: PrimeSet, n: int) -> int:
    """#{a in A : a <= n}, counted without listing (works for huge n)."""
    if n < 1:
        return 0

    def count(i, m):
        # elements built from primes[i:] that are <= m
        if i == P.t - 1:
            p, c = P.primes[i], 0
            while m >= 1:
                c += 1
                m //= p
            return c
        total, p = 0, P.primes[i]
        while m >= 1:
            total += count(i + 1, m)
            m //= p
        return total

    return count(0, n)

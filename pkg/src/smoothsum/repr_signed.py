"""Signed representations: sums of terms from A and -A.

Search model
------------
Generators are the signed smooth numbers of magnitude at most ``B``.
Layer h holds every integer that is a sum of at most h generators, as a
sorted, deduplicated int64 array with back-pointers for witness recovery.
A target n is reached with at most k terms iff n = x + y for x in layer
ceil(k/2) and y in layer floor(k/2), which is answered by binary search
(single n) or by a windowed join (all n in an interval).

Layers are pruned to magnitude 2B.  That loses nothing: any multiset of
terms of size <= B summing to |n| <= B can be ordered so that every
partial sum stays in [-B, B], so both halves of the split stay in [-2B, 2B].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import ResourceLimitError, max_memory_bytes
from .repr_exact import RepresentationTable, build_min_terms
from .smooth import PrimeSet, SmoothNumber, is_smooth, smooth_values

__all__ = [
    "SignedTerm",
    "SignedSearchResult",
    "FPmResult",
    "EvertseTuple",
    "EvertseVerdict",
    "SignedReach",
    "DEFAULT_FRONTIER_CAP",
    "MAX_B",
    "min_terms_signed",
    "f_pm_of_k",
    "signed_window_distances",
    "padic_value",
    "padic_abs",
    "check_evertse_conditions",
]

DEFAULT_FRONTIER_CAP = 10**8
MAX_B = 2**60
MAX_SUBSET_L = 20


@dataclass(frozen=True)
class SignedTerm:
    sign: int
    term: SmoothNumber

    @property
    def value(self):
        return self.sign * self.term.value


@dataclass(frozen=True)
class SignedSearchResult:
    n: int
    length: Optional[int]
    terms: Tuple[SignedTerm, ...]
    magnitude_bound: int
    certified: bool

    def to_json(self):
        return {
            "schema": "smoothsum/signed-search/v1",
            "n": self.n,
            "length": self.length,
            "magnitude_bound": self.magnitude_bound,
            "certified": self.certified,
            "terms": [{"sign": t.sign, "value": t.term.value,
                       "exponents": list(t.term.exponents)} for t in self.terms],
        }


class FPmResult(tuple):
    """``(value, certified)``; value is None when F±(k) exceeds the limit."""

    __slots__ = ()

    def __new__(cls, value, certified):
        return super().__new__(cls, (value, certified))

    value = property(lambda self: self[0])
    certified = property(lambda self: self[1])


class SignedReach:
    """Sum-of-signed-smooth-terms layers for a fixed (P, B)."""

    def __init__(self, P: PrimeSet, B: int, frontier_cap: int = DEFAULT_FRONTIER_CAP):
        if B < 1:
            raise ValueError("B must be >= 1")
        if B > MAX_B:
            raise ResourceLimitError(f"B={B} above the int64-safe limit {MAX_B}")
        self.P = P
        self.B = B
        self.frontier_cap = min(frontier_cap, max_memory_bytes() // 32)
        pos = smooth_values(P, B)
        self.gens = np.concatenate([-pos[::-1], pos])
        self._layers = [(np.zeros(1, np.int64), np.zeros(1, np.int64), np.full(1, -1, np.int64))]

    def layer(self, h: int) -> np.ndarray:
        """Sorted sums of at most h generators (magnitude <= 2B)."""
        while len(self._layers) <= h:
            prev, _, _ = self._layers[-1]
            size = len(prev) * len(self.gens)
            if size > self.frontier_cap:
                raise ResourceLimitError(
                    f"layer {len(self._layers)} needs {size} states (cap {self.frontier_cap})")
            cand = (prev[:, None] + self.gens[None, :]).ravel()
            parent = np.repeat(np.arange(len(prev)), len(self.gens))
            gen = np.tile(np.arange(len(self.gens)), len(prev))
            keep = np.abs(cand) <= 2 * self.B
            # previous layer first so np.unique keeps the shortest sum
            vals = np.concatenate([prev, cand[keep]])
            par = np.concatenate([np.arange(len(prev)), parent[keep]])
            gi = np.concatenate([np.full(len(prev), -1), gen[keep]])
            u, first = np.unique(vals, return_index=True)
            self._layers.append((u, par[first], gi[first]))
        return self._layers[h][0]

    def _witness(self, h: int, idx: int) -> List[int]:
        out = []
        while h > 0:
            _, par, gi = self._layers[h]
            g = int(gi[idx])
            if g >= 0:
                out.append(int(self.gens[g]))
            idx = int(par[idx])
            h -= 1
        return out

    @staticmethod
    def _split(k):
        return (k + 1) // 2, k // 2

    def find(self, n: int, k: int) -> Optional[List[int]]:
        """Signed terms (at most k of them) summing to n, or None."""
        h1, h2 = self._split(k)
        X, Y = self.layer(h1), self.layer(h2)
        want = n - X
        pos = np.searchsorted(Y, want)
        ok = pos < len(Y)
        ok[ok] = Y[pos[ok]] == want[ok]
        hit = np.flatnonzero(ok)
        if not len(hit):
            return None
        i = int(hit[0])
        return self._witness(h1, i) + self._witness(h2, int(pos[i]))

    def reach_window(self, k: int, lo: int, hi: int, chunk: int = 1 << 23) -> np.ndarray:
        """Boolean mask over [lo, hi]: reachable with at most k terms."""
        h1, h2 = self._split(k)
        X, Y = self.layer(h1), self.layer(h2)
        hits = np.zeros(hi - lo + 1, dtype=bool)
        li = np.searchsorted(Y, lo - X, side="left")
        ri = np.searchsorted(Y, hi - X, side="right")
        cnt = ri - li
        cs = np.cumsum(cnt)
        start = 0
        while start < len(X):
            base = int(cs[start - 1]) if start else 0
            end = max(int(np.searchsorted(cs, base + chunk, side="right")), start + 1)
            c = cnt[start:end]
            tot = int(c.sum())
            if tot:
                run_start = np.concatenate([[0], np.cumsum(c)[:-1]])
                idx = np.repeat(li[start:end] - run_start, c) + np.arange(tot)
                hits[np.repeat(X[start:end], c) + Y[idx] - lo] = True
            start = end
        return hits


def _signed_terms(P: PrimeSet, values: Sequence[int]) -> Tuple[SignedTerm, ...]:
    terms = sorted(values, key=lambda v: (-abs(v), -v))
    return tuple(SignedTerm(1 if v > 0 else -1, SmoothNumber(abs(v), is_smooth(P, abs(v))))
                 for v in terms)


def _default_threshold(n: int) -> int:
    return n * n


def min_terms_signed(P: PrimeSet, n: int, B: Optional[int] = None, length_cap: int = 4,
                     frontier_cap: int = DEFAULT_FRONTIER_CAP,
                     cert_threshold: Callable[[int], int] = _default_threshold,
                     reach: Optional[SignedReach] = None) -> SignedSearchResult:
    """Fewest signed smooth terms of magnitude <= B summing to n.

    Lengths 1, 2, ... are tried in order, so a hit at length l proves that no
    representation with l-1 terms exists under the same bound.  ``certified``
    additionally needs B >= cert_threshold(|n|) (default n**2).
    """
    if n == 0:
        raise ValueError("n must be nonzero")
    if B is None:
        B = max(n * n, abs(n))
    if B < abs(n):
        raise ValueError("B must be >= |n|")
    if reach is None or reach.B != B or reach.P != P:
        reach = SignedReach(P, B, frontier_cap)
    big_enough = B >= cert_threshold(abs(n))
    for l in range(1, length_cap + 1):
        w = reach.find(n, l)
        if w is not None:
            return SignedSearchResult(n, len(w), _signed_terms(P, w), B, big_enough)
    return SignedSearchResult(n, None, (), B, False)


def signed_window_distances(P: PrimeSet, N: int, B: int, k_max: int,
                            frontier_cap: int = DEFAULT_FRONTIER_CAP,
                            reach: Optional[SignedReach] = None) -> np.ndarray:
    """Minimal signed length for n = 0..N (0xFF when above k_max)."""
    if reach is None:
        reach = SignedReach(P, B, frontier_cap)
    dist = np.full(N + 1, 0xFF, dtype=np.uint8)
    dist[0] = 0
    for k in range(k_max, 0, -1):
        dist[1:][reach.reach_window(k, 1, N)] = k
    return dist


def f_pm_of_k(P: PrimeSet, k: int, N_limit: int, B: Optional[int] = None,
              frontier_cap: int = DEFAULT_FRONTIER_CAP,
              table: Optional[RepresentationTable] = None,
              reach: Optional[SignedReach] = None) -> FPmResult:
    """Least n <= N_limit with no signed representation by <= k terms of size <= B.

    A found value is only a certain value of F±(k) under the magnitude-bound
    hypothesis; ``certified`` is set when B >= N_limit**2.  ``value=None``
    means every n <= N_limit was represented, which is unconditional.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if B is None:
        B = N_limit * N_limit
    if B < N_limit:
        raise ValueError("B must be >= N_limit")
    # unsigned representations are signed ones, so a full unsigned table
    # settles the question without the signed join
    if table is None or table.N < N_limit or table.term_cap < k:
        table = build_min_terms(P, N_limit, k)
    unsigned_over = np.flatnonzero(table.min_terms[1: N_limit + 1] > k)
    if not len(unsigned_over):
        return FPmResult(None, True)
    if reach is None or reach.B != B or reach.P != P:
        reach = SignedReach(P, B, frontier_cap)
    lo = int(unsigned_over[0]) + 1
    hits = reach.reach_window(k, lo, N_limit)
    miss = np.flatnonzero(~hits)
    if not len(miss):
        return FPmResult(None, True)
    return FPmResult(lo + int(miss[0]), B >= N_limit * N_limit)


def padic_abs(x: int, p: int) -> Fraction:
    """Standard p-adic absolute value p**(-r), p**r || x."""
    if x == 0:
        raise ValueError("p-adic value of 0 is undefined here")
    r = 0
    while x % p == 0:
        x //= p
        r += 1
    return Fraction(1, p**r)


def padic_value(x: int, p: int) -> Fraction:
    """|x| * p**(-r) where p**r exactly divides x (the p-free part of |x|)."""
    return abs(x) * padic_abs(x, p)


@dataclass(frozen=True)
class EvertseTuple:
    entries: Tuple[int, ...]
    S0: Tuple[int, ...]
    c: Fraction = Fraction(1)
    d: Fraction = Fraction(1, 2)

    def __post_init__(self):
        for name in ("c", "d"):
            v = getattr(self, name)
            # floats go through repr so 0.5 -> 1/2 rather than a 2**-k dyadic
            object.__setattr__(self, name, Fraction(repr(v)) if isinstance(v, float) else Fraction(v))
        if len(self.entries) < 2:
            raise ValueError("need at least x0 and x1")
        if not self.c > 0 or not 0 <= self.d < 1:
            raise ValueError("need c > 0 and 0 <= d < 1")


@dataclass(frozen=True)
class EvertseVerdict:
    zero_sum: bool
    no_vanishing_subsum: bool
    coprime: bool
    height_bound: bool
    height: Optional[Fraction] = None

    @property
    def all_hold(self):
        return self.zero_sum and self.no_vanishing_subsum and self.coprime and self.height_bound

    def to_json(self):
        return {
            "schema": "smoothsum/evertse-verdict/v1",
            "zero_sum": self.zero_sum,
            "no_vanishing_subsum": self.no_vanishing_subsum,
            "coprime": self.coprime,
            "height_bound": self.height_bound,
            "height": None if self.height is None else str(self.height),
        }


def _has_vanishing_subsum(xs: Sequence[int]) -> bool:
    n = len(xs)
    if sum(abs(x) for x in xs) < 2**62:
        sums = np.zeros(1, dtype=np.int64)
        for x in xs:
            sums = np.concatenate([sums, sums + x])
    else:
        sums = [0]
        for x in xs:
            sums = sums + [s + x for s in sums]
        sums = np.array(sums, dtype=object)
    # subset mask j uses bit i for xs[i]; drop the empty and the full set
    zero = np.flatnonzero(sums[1: (1 << n) - 1] == 0)
    return len(zero) > 0


def check_evertse_conditions(tup: EvertseTuple) -> EvertseVerdict:
    """Check the four hypotheses of the S-unit finiteness lemma on one tuple.

    The height test uses prod_j |x_j| * prod_{p in S0} |x_j|_p with the usual
    |x|_p = p**(-r), i.e. the product of the S0-free parts of the entries.
    """
    xs = tuple(int(x) for x in tup.entries)
    if len(xs) - 1 > MAX_SUBSET_L:
        raise ResourceLimitError(f"l={len(xs) - 1} exceeds the subset cap {MAX_SUBSET_L}")
    zero_sum = sum(xs) == 0
    no_vanish = not _has_vanishing_subsum(xs)
    coprime = math.gcd(*xs) == 1
    if any(x == 0 for x in xs):
        return EvertseVerdict(zero_sum, no_vanish, coprime, False, None)
    height = Fraction(1)
    for x in xs:
        h = Fraction(abs(x))
        for p in tup.S0:
            h *= padic_abs(x, p)
        height *= h
    big = max(abs(x) for x in xs)
    # height <= c * big**d, exactly: compare height/c against big**d via
    # (height/c)**q <= big**p for d = p/q
    d = Fraction(tup.d)
    lhs = (height / Fraction(tup.c)) ** d.denominator
    bound = lhs <= Fraction(big) ** d.numerator
    return EvertseVerdict(zero_sum, no_vanish, coprime, bound, height)

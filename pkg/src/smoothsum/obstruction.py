"""Residues of k-fold smooth sums modulo m, and obstruction certificates.

If some residue class r (mod m) is hit by no sum of at most k signed smooth
terms, then every positive n = r (mod m) needs more than k terms, so the
least such n bounds F±(k) from above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import numpy as np

from .carmichael import (divisors_from_factors, factorize, is_prime,
                         lambda_from_factors)
from .errors import ResourceLimitError, max_memory_bytes
from .smooth import PrimeSet

__all__ = [
    "ResidueCoverage",
    "CoverageBoundReport",
    "ObstructionCertificate",
    "MAX_MODULUS",
    "power_residues",
    "smooth_residues",
    "sumset_coverage",
    "coverage_bound_check",
    "candidate_moduli",
    "find_obstruction",
    "verify_certificate",
]

MAX_MODULUS = 10**8


def power_residues(b: int, m: int) -> FrozenSet[int]:
    """{b**u mod m : u >= 0}, including u = 0; stops at the first repeat."""
    if m < 2:
        raise ValueError("m must be >= 2")
    b %= m
    seen = set()
    x = 1
    while x not in seen:
        seen.add(x)
        x = x * b % m
    return frozenset(seen)


def _smooth_residue_mask(P: PrimeSet, m: int) -> Tuple[np.ndarray, Dict[int, int]]:
    mask = np.zeros(m, dtype=bool)
    mask[1] = True
    sizes = {}
    for p in P.primes:
        orbit = np.fromiter(sorted(power_residues(p, m)), dtype=np.int64)
        sizes[p] = len(orbit)
        cur = np.flatnonzero(mask)
        mask = np.zeros(m, dtype=bool)
        mask[(cur[:, None] * orbit[None, :] % m).ravel()] = True
    return mask, sizes


def smooth_residues(P: PrimeSet, m: int) -> FrozenSet[int]:
    """{a mod m : a in A}, the product closure of the prime power orbits."""
    if m < 2:
        raise ValueError("m must be >= 2")
    mask, _ = _smooth_residue_mask(P, m)
    return frozenset(np.flatnonzero(mask).tolist())


@dataclass(frozen=True)
class ResidueCoverage:
    """Residues mod m of sums of at most k (signed) smooth terms.

    ``residues`` is a Python int used as an m-bit set; bit 0 is always set
    because the empty sum counts.
    """

    m: int
    k: int
    signed: bool
    residues: int
    source_residue_set_sizes: Dict[int, int] = field(default_factory=dict)

    def __contains__(self, r):
        return bool(self.residues >> (r % self.m) & 1)

    def __len__(self):
        return self.residues.bit_count()

    @property
    def full(self):
        return len(self) == self.m

    def covered(self) -> List[int]:
        return [r for r in range(self.m) if self.residues >> r & 1]

    def missing(self) -> List[int]:
        return [r for r in range(self.m) if not self.residues >> r & 1]

    def first_missing(self) -> Optional[int]:
        inv = ~self.residues & ((1 << self.m) - 1)
        if not inv:
            return None
        return (inv & -inv).bit_length() - 1


def _rotate(x: int, r: int, m: int, mask: int) -> int:
    if r == 0:
        return x
    return ((x << r) | (x >> (m - r))) & mask


def sumset_coverage(P: PrimeSet, k: int, m: int, signed: bool = False) -> ResidueCoverage:
    """Iterated modular sumset, k rounds of shifted-OR over a bitset.

    Each round only rotates the residues that were new in the previous
    round; the loop ends early once nothing new appears or all m residues
    are covered.
    """
    if m < 2 or k < 1:
        raise ValueError("need m >= 2 and k >= 1")
    if m > MAX_MODULUS or m // 4 > max_memory_bytes():
        raise ResourceLimitError(f"modulus {m} above the coverage cap")
    mask_arr, sizes = _smooth_residue_mask(P, m)
    if signed:
        mask_arr = mask_arr | mask_arr[(-np.arange(m)) % m]
    R = np.flatnonzero(mask_arr).tolist()
    full = (1 << m) - 1
    cov = frontier = 1
    for _ in range(k):
        new = 0
        for r in R:
            new |= _rotate(frontier, r, m, full)
        new &= ~cov
        if not new:
            break
        cov |= new
        frontier = new
        if cov == full:
            break
    return ResidueCoverage(m, k, signed, cov, sizes)


@dataclass(frozen=True)
class CoverageBoundReport:
    m: int
    k: int
    t: int
    signed: bool
    lam: int
    max_alpha: int
    coverage: int
    log_coverage: float
    log_bound: float
    bound_holds: bool
    log_tuple_bound: float
    tuple_bound_holds: bool


def coverage_bound_check(P: PrimeSet, k: int, m: int, signed: bool = False,
                         coverage: Optional[ResidueCoverage] = None) -> CoverageBoundReport:
    """Compare #coverage with (lambda(m) + max alpha + 1)**(k t).

    Also reports the direct tuple count ((lambda + alpha)**t + 1)**k, with
    the orbit count doubled for signed sums; the first bound is stated for
    unsigned sums, the second holds for both.
    """
    if coverage is None:
        coverage = sumset_coverage(P, k, m, signed)
    fac = factorize(m)
    lam = lambda_from_factors(fac.factors)
    alpha = fac.max_exponent
    size = len(coverage)
    log_bound = k * P.t * math.log(lam + alpha + 1)
    per_term = (2 if signed else 1) * (lam + alpha) ** P.t + 1
    log_tuple = k * math.log(per_term)
    exact = k * P.t * math.log2(lam + alpha + 1) < 4096
    holds = size <= (lam + alpha + 1) ** (k * P.t) if exact else math.log(size) <= log_bound
    tuple_holds = size <= per_term**k if k * math.log2(per_term) < 4096 else math.log(size) <= log_tuple
    return CoverageBoundReport(m, k, P.t, signed, lam, alpha, size, math.log(size),
                               log_bound, holds, log_tuple, tuple_holds)


@dataclass(frozen=True)
class ObstructionCertificate:
    primes: Tuple[int, ...]
    k: int
    m: int
    lambda_m: int
    residue: int
    witness_n: int
    checked_by_search: bool = False

    @property
    def implied_bound(self) -> str:
        return f"F_pm({self.k}) <= {self.witness_n}"

    def to_json(self):
        return {
            "schema": "smoothsum/certificate/v1",
            "P": list(self.primes),
            "k": self.k,
            "m": self.m,
            "lambda_m": self.lambda_m,
            "residue": self.residue,
            "witness_n": self.witness_n,
            "checked_by_search": self.checked_by_search,
            "implied_bound": self.implied_bound,
        }


def candidate_moduli(budget: int, max_modulus: int = 10**6, eps_y: int = 12) -> List[int]:
    """Moduli to try, cheapest-looking first.

    The pool is every m in [2, budget] plus the divisor-restricted EPS
    products prod{q prime : (q-1) | d} for d | lcm(1..y) that fit under
    ``max_modulus``; sorted by lambda(m)/log m, then by m.
    """
    pool = set(range(2, budget + 1))
    L = math.lcm(*range(1, eps_y + 1))
    for d in divisors_from_factors(factorize(L).factors):
        qs = [e + 1 for e in divisors_from_factors(factorize(d).factors) if is_prime(e + 1)]
        prod = math.prod(qs)
        if prod <= max_modulus:
            pool.add(prod)
    scored = []
    for m in pool:
        if m > max_modulus:
            continue
        lam = lambda_from_factors(factorize(m).factors)
        scored.append((lam / math.log(m), m))
    scored.sort()
    return [m for _, m in scored]


def find_obstruction(P: PrimeSet, k: int, budget: int = 2000,
                     max_modulus: int = 10**6, moduli: Optional[Iterable[int]] = None
                     ) -> Optional[ObstructionCertificate]:
    """Scan candidate moduli for a residue class missed by signed k-sums.

    Every candidate within ``budget`` is examined; the certificate with the
    smallest witness n (then smallest m) is returned, or None when no
    candidate has a gap.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if moduli is None:
        moduli = candidate_moduli(budget, max_modulus)
    best = None
    for i, m in enumerate(moduli):
        if i >= budget:
            break
        cov = sumset_coverage(P, k, m, signed=True)
        r = cov.first_missing()
        if r is None:
            continue
        n = r if r > 0 else m
        if best is None or (n, m) < (best.witness_n, best.m):
            lam = lambda_from_factors(factorize(m).factors)
            best = ObstructionCertificate(P.primes, k, m, lam, r, n)
    return best


def verify_certificate(cert: ObstructionCertificate, B: Optional[int] = None,
                       frontier_cap: Optional[int] = None) -> ObstructionCertificate:
    """Re-check a certificate: residue uncovered and no exact <= k-term representation.

    Returns a copy with ``checked_by_search`` set; raises AssertionError-like
    ValueError if the certificate is refuted.
    """
    from .repr_signed import DEFAULT_FRONTIER_CAP, MAX_B, min_terms_signed

    P = PrimeSet(tuple(cert.primes))
    cov = sumset_coverage(P, cert.k, cert.m, signed=True)
    if cert.residue in cov or cert.witness_n % cert.m != cert.residue:
        raise ValueError(f"certificate refuted by coverage: {cert}")
    if B is None:
        B = min(max(cert.witness_n**2, cert.witness_n), MAX_B)
    res = min_terms_signed(P, cert.witness_n, B, length_cap=cert.k,
                           frontier_cap=frontier_cap or DEFAULT_FRONTIER_CAP)
    if res.length is not None:
        raise ValueError(f"certificate refuted: {cert.witness_n} = {res.terms}")
    return ObstructionCertificate(cert.primes, cert.k, cert.m, cert.lambda_m,
                                  cert.residue, cert.witness_n, True)

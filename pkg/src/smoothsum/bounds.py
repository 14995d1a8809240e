"""Closed-form bounds in log space, and the finite-range comparisons against them.

None of the asymptotic statements can be confirmed by finite computation,
because their constants are unspecified or ineffective.  Everything here
reports both sides of each comparison and the margin; fitted constants are
reported, never asserted.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from .carmichael import factorize, lambda_sieve
from .repr_exact import build_min_terms, f_values, lower_exponents
from .repr_signed import SignedReach, f_pm_of_k
from .smooth import PrimeSet, count_smooth_upto, greedy_decompose

__all__ = [
    "LIMITATION",
    "BoundEntry",
    "BoundsReport",
    "DEFAULT_CONSTANTS",
    "eval_bounds",
    "greedy_bound_eval",
    "greedy_comparison",
    "count_smooth_bound_check",
    "sieve_count_coprime",
    "representable_count_signed",
    "lambda_lower_sample",
    "empirical_report",
]

LIMITATION = (
    "The F(k) and F_pm(k) bounds are asymptotic statements whose constants are "
    "unspecified (c, C, C_pm) or ineffective (the threshold beyond which the "
    "(kt)^((1+eps)kt) bound for F_pm holds). Finite computation cannot verify "
    "them; this report gives fitted constants and margins at the computed "
    "instances only."
)

DEFAULT_CONSTANTS = {"c": 1.0, "C": 1.0, "C_pm": 1.0, "c1": 1.0, "c2": 2.0, "C6": 1.0}


@dataclass(frozen=True)
class BoundEntry:
    """One comparison. ``log_bound`` is the natural log of the bound.

    ``loglog_bound`` is filled for doubly exponential bounds, where
    ``log_bound`` may be ``inf`` while the comparison is still made on the
    log-log scale.
    """

    name: str
    log_bound: float
    loglog_bound: Optional[float] = None
    log_empirical: Optional[float] = None
    relation: str = ""
    holds: Optional[bool] = None
    margin: Optional[float] = None


@dataclass
class BoundsReport:
    parameters: Dict[str, float]
    entries: List[BoundEntry] = field(default_factory=list)
    fitted: Dict[str, object] = field(default_factory=dict)
    limitation: str = LIMITATION

    def entry(self, name):
        return next(e for e in self.entries if e.name == name)

    def to_json(self):
        return {
            "schema": "smoothsum/bounds-report/v1",
            "parameters": self.parameters,
            "entries": [asdict(e) for e in self.entries],
            "fitted": self.fitted,
            "limitation": self.limitation,
        }

    def to_csv(self):
        buf = io.StringIO()
        cols = ["name", "log_bound", "loglog_bound", "log_empirical", "relation", "holds", "margin"]
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for e in self.entries:
            w.writerow([getattr(e, c) for c in cols])
        return buf.getvalue()


def _compare(name, log_bound, log_emp, relation, loglog_bound=None):
    """margin = log(bound) - log(empirical) for upper bounds, reversed for lower."""
    if log_emp is None:
        return BoundEntry(name, log_bound, loglog_bound, None, relation)
    if relation == ">":
        margin = log_emp - log_bound
        holds = margin > 0
    else:
        if math.isinf(log_bound) and loglog_bound is not None:
            margin = math.inf
        else:
            margin = log_bound - log_emp
        holds = margin >= 0 if relation == "<=" else margin > 0
    return BoundEntry(name, log_bound, loglog_bound, log_emp, relation, holds, margin)


def _safe_exp(x):
    return math.exp(x) if x < 709 else math.inf


def eval_bounds(k: int, t: int, eps: float, constants: Optional[Dict[str, float]] = None,
                F: Optional[int] = None, F_pm: Optional[int] = None) -> BoundsReport:
    """The four F-bounds at (k, t) in natural-log scale.

    lower_F       log k**(c k)             = c k log k
    upper_F       log C (kt)**((1+eps)kt)  = log C + (1+eps) kt log kt
    upper_F_pm    log exp((kt)**C_pm)      = (kt)**C_pm  (log-log: C_pm log kt)
    upper_F_pm_large_k  (1+eps) kt log kt

    Passing observed F or F_pm fills the empirical side of each comparison.
    """
    if k < 2 or t < 2 or eps <= 0:
        raise ValueError("need k >= 2, t >= 2, eps > 0")
    const = dict(DEFAULT_CONSTANTS)
    const.update(constants or {})
    if any(v <= 0 for v in const.values()):
        raise ValueError("constants must be positive")
    kt = k * t
    lkt = math.log(kt)
    logF = math.log(F) if F else None
    logFpm = math.log(F_pm) if F_pm else None
    loglog_iii = const["C_pm"] * lkt
    report = BoundsReport({"k": k, "t": t, "eps": eps, **const})
    report.entries = [
        _compare("lower_F", const["c"] * k * math.log(k), logF, ">"),
        _compare("upper_F", math.log(const["C"]) + (1 + eps) * kt * lkt, logF, "<="),
        _compare("upper_F_pm", _safe_exp(loglog_iii), logFpm, "<", loglog_iii),
        _compare("upper_F_pm_large_k", (1 + eps) * kt * lkt, logFpm, "<="),
    ]
    return report


def greedy_bound_eval(n: float, c1: float = 1.0, c2: float = 2.0) -> float:
    """2 log n / (c1 log log n) + sqrt(log n) / log c2, for n > e."""
    if n <= math.e or c1 <= 0 or c2 <= 1:
        raise ValueError("need n > e, c1 > 0, c2 > 1")
    ln = math.log(n)
    return 2 * ln / (c1 * math.log(ln)) + math.sqrt(ln) / math.log(c2)


def greedy_comparison(P: PrimeSet, ns: Sequence[int], c1: float = 1.0, c2: float = 2.0):
    """Observed greedy length next to the formula, for each n.

    Also returns the largest c1 for which the formula (with the given c2)
    still dominates every observed length, when one exists.
    """
    rows = []
    fit = math.inf
    for n in ns:
        L = len(greedy_decompose(P, int(n)))
        ln = math.log(n)
        slack = L - math.sqrt(ln) / math.log(c2)
        if slack > 0:
            fit = min(fit, 2 * ln / (math.log(ln) * slack))
        rows.append({"n": int(n), "greedy_length": L, "bound": greedy_bound_eval(n, c1, c2)})
    return rows, fit


def count_smooth_bound_check(P: PrimeSet, ns: Sequence[int], C6: float = 1.0):
    """#(A u {0}) in [0, n] against (C6 log n)**t, plus the least C6 that works.

    Returns (rows, fitted_C6).
    """
    rows = []
    need = 0.0
    for n in ns:
        if n < 2:
            raise ValueError("n must be >= 2")
        cnt = count_smooth_upto(P, int(n)) + 1
        bound = (C6 * math.log(n)) ** P.t
        need = max(need, cnt ** (1 / P.t) / math.log(n))
        rows.append({"n": int(n), "count": cnt, "bound": bound, "holds": cnt <= bound})
    return rows, need


def sieve_count_coprime(P: PrimeSet, N: int):
    """Exact #{n <= N : gcd(n, prod P) = 1} by inclusion-exclusion.

    Returns a dict with the count and both lower-bound expressions,
    N prod(1 - 1/p) - 2**t and 2**-t N - 2**t.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    count = 0
    for r in range(P.t + 1):
        for sub in itertools.combinations(P.primes, r):
            count += (-1) ** r * (N // math.prod(sub))
    density = math.prod(1 - 1 / p for p in P.primes)
    return {
        "N": N,
        "count": count,
        "density_bound": N * density - 2**P.t,
        "crude_bound": N / 2**P.t - 2**P.t,
        "holds": count >= N * density - 2**P.t and count >= N / 2**P.t - 2**P.t,
    }


def representable_count_signed(P: PrimeSet, k: int, N: int, B: Optional[int] = None,
                               reach: Optional[SignedReach] = None):
    """Coprime-to-P n <= N with a signed representation by <= k terms, vs 2*2**k*(3 log N)**(kt).

    Also reports the largest exponent s_j of a smooth number below B next
    to 3 log N - 1 (the exponent ceiling used in the counting argument when
    B = N**2).
    """
    if k < 1 or N < 2:
        raise ValueError("need k >= 1 and N >= 2")
    if B is None:
        B = N * N
    if reach is None:
        reach = SignedReach(P, B)
    hit = reach.reach_window(k, 1, N)
    ns = np.arange(1, N + 1)
    coprime = np.ones(N, dtype=bool)
    for p in P.primes:
        coprime &= ns % p != 0
    count = int((hit & coprime).sum())
    log_bound = math.log(2) * (k + 1) + k * P.t * math.log(3 * math.log(N))
    max_exp = max(int(math.log(B) / math.log(p) + 1e-9) for p in P.primes)
    return {
        "k": k,
        "N": N,
        "B": B,
        "count": count,
        "log_bound": log_bound,
        "holds": count == 0 or math.log(count) <= log_bound,
        "max_exponent_below_B": max_exp,
        "exponent_ceiling": 3 * math.log(N) - 1,
    }


def lambda_lower_sample(M: int):
    """min over 16 <= m <= M of log lambda(m) / (log log m * log log log m)."""
    if M < 100:
        raise ValueError("M must be >= 100")
    lam = lambda_sieve(M)
    best, arg = math.inf, None
    for m in range(16, M + 1):
        lm = math.log(m)
        s = math.log(lam[m]) / (math.log(lm) * math.log(math.log(lm)))
        if s < best:
            best, arg = s, m
    return {"M": M, "statistic": best, "argmin": arg, "lambda": lam[arg],
            "factorization": str(factorize(arg))}


def empirical_report(P: PrimeSet, k_max: int = 5, N_limit: int = 10**5, eps: float = 1.0,
                     constants: Optional[Dict[str, float]] = None,
                     signed_k_max: int = 4, B: Optional[int] = None):
    """F(k) and F_pm(k) at desk scale next to every bound, with fitted c(k).

    Returns a dict; F values above N_limit are None and their comparisons
    carry no verdict.
    """
    table = build_min_terms(P, N_limit, k_max)
    F = f_values(P, k_max, N_limit, table)
    B = N_limit * N_limit if B is None else B
    reach = SignedReach(P, B)
    F_pm = []
    for k in range(1, k_max + 1):
        if k <= signed_k_max:
            F_pm.append(f_pm_of_k(P, k, N_limit, B, table=table, reach=reach))
        else:
            F_pm.append(None)
    rows = []
    for k in range(2, k_max + 1):
        fp = F_pm[k - 1]
        rep = eval_bounds(k, P.t, eps, constants, F[k - 1], fp.value if fp else None)
        rows.append(rep.to_json())
    return {
        "schema": "smoothsum/empirical-report/v1",
        "P": list(P.primes),
        "N_limit": N_limit,
        "B": B,
        "F": F,
        "F_pm": [None if fp is None else {"value": fp.value, "certified": fp.certified}
                 for fp in F_pm],
        "fitted_c": lower_exponents(F),
        "bounds": rows,
        "limitation": LIMITATION,
    }

"""Minimal number of unsigned smooth terms for every n <= N, and F(k).

F(k) here is the least n that is not a sum of at most k elements of A
(equivalently, of exactly k elements of A together with 0).
"""

from __future__ import annotations

import json
import math
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

import numpy as np

from .errors import ResourceLimitError, max_memory_bytes
from .smooth import PrimeSet, make_prime_set, smooth_values

__all__ = [
    "UNREACHABLE",
    "DEFAULT_TERM_CAP",
    "RepresentationTable",
    "build_min_terms",
    "f_of_k",
    "f_values",
    "lower_exponents",
    "write_table",
    "read_table",
    "TABLE_MAGIC",
]

UNREACHABLE = 0xFF
DEFAULT_TERM_CAP = 64
TABLE_MAGIC = b"SMSTAB"
TABLE_VERSION = 1


@dataclass
class RepresentationTable:
    """``min_terms[n]`` for 0 <= n <= N; index 0 is the empty sum."""

    P: PrimeSet
    N: int
    min_terms: np.ndarray
    term_cap: int

    def __getitem__(self, n):
        return int(self.min_terms[n])

    def first_exceeding(self, k: int) -> Optional[int]:
        """Smallest n >= 1 needing more than k terms, or None if none <= N."""
        over = np.flatnonzero(self.min_terms[1:] > k)
        return int(over[0]) + 1 if len(over) else None


def build_min_terms(P: PrimeSet, N: int, term_cap: int = DEFAULT_TERM_CAP) -> RepresentationTable:
    """Exact minimal term counts for 1..N.

    Level-synchronous: the set reachable with j terms is the set reachable
    with j-1 terms shifted by every a in A.  Only the newest level needs
    shifting, so the total work is about |A <= N| * N * (max count).
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if not 1 <= term_cap < UNREACHABLE:
        raise ValueError(f"term_cap must be in [1, {UNREACHABLE - 1}]")
    if 3 * (N + 1) > max_memory_bytes():
        raise ResourceLimitError(f"table for N={N} exceeds the memory cap")
    A = smooth_values(P, N)
    dist = np.full(N + 1, UNREACHABLE, dtype=np.uint8)
    dist[0] = 0
    frontier = np.zeros(N + 1, dtype=bool)
    frontier[0] = True
    reached = frontier.copy()
    for j in range(1, term_cap + 1):
        nxt = np.zeros(N + 1, dtype=bool)
        for a in A:
            a = int(a)
            nxt[a:] |= frontier[: N + 1 - a]
        nxt &= ~reached
        if not nxt.any():
            break
        dist[nxt] = j
        reached |= nxt
        frontier = nxt
        if reached.all():
            break
    return RepresentationTable(P, N, dist, term_cap)


def f_of_k(P: PrimeSet, k: int, N_limit: int,
           table: Optional[RepresentationTable] = None) -> Optional[int]:
    """Least n not a sum of at most k elements of A; None if it exceeds N_limit."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if table is None or table.N < N_limit or table.term_cap < k:
        table = build_min_terms(P, N_limit, max(k, 1))
    over = np.flatnonzero(table.min_terms[1: N_limit + 1] > k)
    return int(over[0]) + 1 if len(over) else None


def f_values(P: PrimeSet, k_max: int, N_limit: int,
             table: Optional[RepresentationTable] = None) -> List[Optional[int]]:
    """[F(1), ..., F(k_max)] from one table (None where F(k) > N_limit)."""
    if table is None:
        table = build_min_terms(P, N_limit, k_max)
    return [f_of_k(P, k, N_limit, table) for k in range(1, k_max + 1)]


def lower_exponents(f_vals) -> dict:
    """c(k) = log F(k) / (k log k) for each computed k >= 2."""
    return {k: math.log(F) / (k * math.log(k))
            for k, F in enumerate(f_vals, start=1) if k >= 2 and F is not None}


# Binary layout: magic, u16 version, u16 t, t x u64 primes, u64 N, u8 term_cap,
# then one byte per n = 1..N (0xFF = above term_cap).  All little-endian.
def write_table(table: RepresentationTable, path, summary_path=None, k_max: int = 8):
    path = Path(path)
    with path.open("wb") as fh:
        fh.write(TABLE_MAGIC)
        fh.write(struct.pack("<HH", TABLE_VERSION, table.P.t))
        fh.write(struct.pack(f"<{table.P.t}Q", *table.P.primes))
        fh.write(struct.pack("<QB", table.N, table.term_cap))
        fh.write(table.min_terms[1:].astype("<u1").tobytes())
    if summary_path is not None:
        ks = range(1, min(k_max, table.term_cap) + 1)
        summary = {
            "schema": "smoothsum/table-summary/v1",
            "primes": list(table.P.primes),
            "N": table.N,
            "term_cap": table.term_cap,
            "F": {str(k): table.first_exceeding(k) for k in ks},
        }
        Path(summary_path).write_text(json.dumps(summary, indent=2) + "\n")


def read_table(path) -> RepresentationTable:
    data = Path(path).read_bytes()
    if not data.startswith(TABLE_MAGIC):
        raise ValueError("not a smoothsum table file")
    off = len(TABLE_MAGIC)
    version, t = struct.unpack_from("<HH", data, off)
    if version != TABLE_VERSION:
        raise ValueError(f"unsupported table version {version}")
    off += 4
    primes = struct.unpack_from(f"<{t}Q", data, off)
    off += 8 * t
    N, cap = struct.unpack_from("<QB", data, off)
    off += 9
    body = np.frombuffer(data, dtype=np.uint8, count=N, offset=off)
    return RepresentationTable(make_prime_set(primes), N,
                               np.concatenate([[0], body]).astype(np.uint8), cap)

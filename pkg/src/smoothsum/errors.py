"""Exception types and resource caps shared by every module."""

import os

__all__ = [
    "SmoothsumError",
    "ResourceLimitError",
    "BudgetExceededError",
    "max_memory_bytes",
]

_DEFAULT_MAX_MEM = 2 << 30  # 2 GiB


class SmoothsumError(Exception):
    """Base class for all errors raised by smoothsum."""


class ResourceLimitError(SmoothsumError):
    """A table, frontier or bitset would exceed its configured cap."""


class BudgetExceededError(SmoothsumError):
    """A search ran out of budget before it could reach a verdict."""


def max_memory_bytes():
    """Memory cap in bytes, read from ``SMOOTHSUM_MAX_MEM`` (suffixes K/M/G ok)."""
    raw = os.environ.get("SMOOTHSUM_MAX_MEM")
    if not raw:
        return _DEFAULT_MAX_MEM
    raw = raw.strip().upper()
    scale = {"K": 1 << 10, "M": 1 << 20, "G": 1 << 30}.get(raw[-1:], 1)
    if scale != 1:
        raw = raw[:-1]
    try:
        return int(float(raw) * scale)
    except ValueError:
        raise ValueError(f"bad SMOOTHSUM_MAX_MEM value: {os.environ['SMOOTHSUM_MAX_MEM']!r}")

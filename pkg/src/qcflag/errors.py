"""Exception types shared across the package."""

from __future__ import annotations

__all__ = ['ConsistencyError', 'CacheFormatError']


class ConsistencyError(RuntimeError):
    """An internal cross-check failed (dual routes disagree, integrality lost,
    reconstitution mismatch).  Never caught and ignored; the CLI maps it to
    exit code 2."""


class CacheFormatError(RuntimeError):
    """A cache file has the wrong format version or describes a different ring."""

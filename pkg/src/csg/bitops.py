"""Bit-level helpers for enumerating bipartitions of coalition masks.

A block of size s has 2**(s-1) - 1 unordered bipartitions. Fixing one
"anchor" member in the first part and ranging a bit pattern x over the
other s-1 members enumerates each bipartition exactly once; the mapping
x -> sum of selected member bits is strictly increasing, so enumeration
order is ascending in the anchor-free part's coalition index.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

__all__ = ["mask_bits", "pattern_matrix", "pattern_popcounts", "subset_sums"]

# widths above this would cache multi-GB tables; fall back to subset_sums
_PATTERN_CACHE_LIMIT = 16


def mask_bits(mask: int) -> list[int]:
    """The set bits of a mask as individual bit values, ascending."""
    out = []
    while mask:
        bit = mask & -mask
        out.append(bit)
        mask ^= bit
    return out


@lru_cache(maxsize=None)
def pattern_matrix(width: int) -> np.ndarray:
    """(2**width, width) 0/1 matrix; row x holds the bits of x, LSB first."""
    xs = np.arange(1 << width, dtype=np.int64)
    mat = (xs[:, None] >> np.arange(width, dtype=np.int64)) & 1
    mat.setflags(write=False)
    return mat


@lru_cache(maxsize=None)
def pattern_popcounts(width: int) -> np.ndarray:
    """Popcount of every pattern of the given width."""
    pc = np.zeros(1, dtype=np.int64)
    for _ in range(width):
        pc = np.concatenate([pc, pc + 1])
    pc.setflags(write=False)
    return pc


def subset_sums(bitvals: list[int]) -> np.ndarray:
    """All 2**w subset sums of the given bit values, indexed by pattern."""
    if len(bitvals) <= _PATTERN_CACHE_LIMIT:
        vals = np.asarray(bitvals, dtype=np.int64)
        return pattern_matrix(len(bitvals)) @ vals
    out = np.zeros(1, dtype=np.int64)
    for v in bitvals:
        out = np.concatenate([out, out + v])
    return out

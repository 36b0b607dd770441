"""Bitmask enumeration of fixed-size subsets and pairwise popcount tables.

Subsets of [d] are bitmasks (bit i set means element i+1 is in the set).
Enumeration order everywhere is ascending mask value, which is the canonical
vertex order for all subset-indexed matrices in this package.
"""

from __future__ import annotations

from math import comb

import numpy as np

from .errors import ParameterError

_BLOCK = 1024


def subset_masks(d: int, s: int) -> list[int]:
    """All s-subsets of [d] as bitmasks in ascending order (Gosper's hack)."""
    if not 0 <= s <= d:
        raise ParameterError(f"need 0 <= s <= d, got s={s} d={d}")
    if s == 0:
        return [0]
    out = []
    m = (1 << s) - 1
    limit = 1 << d
    while m < limit:
        out.append(m)
        lo = m & -m
        carry = m + lo
        m = carry | (((m ^ carry) >> 2) // lo)
    assert len(out) == comb(d, s)
    return out


def subset_masks_upto(d: int, kmax: int) -> list[int]:
    """All subsets of [d] with at most kmax elements, ascending by mask."""
    if not 0 <= kmax <= d:
        raise ParameterError(f"need 0 <= kmax <= d, got kmax={kmax} d={d}")
    merged = []
    for k in range(kmax + 1):
        merged.extend(subset_masks(d, k))
    merged.sort()
    return merged


def pairwise_intersection_lookup(masks: list[int], table: np.ndarray) -> np.ndarray:
    """Matrix T[popcount(masks[i] & masks[j])], assembled in row blocks.

    Requires every mask to fit in 63 bits.  The lookup table must cover
    popcounts 0..max size; its dtype decides the output dtype.
    """
    if masks and max(masks) >= (1 << 63):
        raise ParameterError("masks must fit in 63 bits for the vector path")
    arr = np.asarray(masks, dtype=np.int64)
    n = arr.shape[0]
    out = np.empty((n, n), dtype=table.dtype)
    for lo in range(0, n, _BLOCK):
        hi = min(lo + _BLOCK, n)
        inter = np.bitwise_count(arr[lo:hi, None] & arr[None, :])
        out[lo:hi] = table[inter]
    return out

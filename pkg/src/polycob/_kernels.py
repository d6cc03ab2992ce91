"""Signed subset-sum kernels shared by the smoothness and admissibility code.

Every table lists the 2**k sign vectors over ``weights`` in reflected
binary Gray order.  Bit ``i`` of a mask set means ``+weights[i]``, clear
means ``-weights[i]``; entry 0 is the all-minus vector.  Each new entry
costs one addition on top of an already computed one.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence

import numpy as np

# Integer sums whose absolute total stays below this bound fit in int64
# with headroom for the offset additions done by callers.
INT64_SAFE = 1 << 60


def fits_int64(weights: Sequence[int]) -> bool:
    return 4 * sum(abs(w) for w in weights) < INT64_SAFE


def gray_walk(weights: Sequence[int]) -> Iterator[tuple[int, int]]:
    """Yield ``(mask, signed_sum)`` along the reflected Gray code.

    Step ``g`` flips bit ``ctz(g)``, so the running sum changes by exactly
    ``+-2 * weights[bit]``.
    """
    mask = 0
    total = -sum(weights)
    yield mask, total
    twice = [2 * w for w in weights]
    for g in range(1, 1 << len(weights)):
        bit = (g & -g).bit_length() - 1
        mask ^= 1 << bit
        if mask >> bit & 1:
            total += twice[bit]
        else:
            total -= twice[bit]
        yield mask, total


def gray_table(weights: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised :func:`gray_walk`: arrays ``(masks, sums)`` of length 2**k.

    Built by reflection, so the order equals the walk order.  Requires
    :func:`fits_int64`.
    """
    k = len(weights)
    masks = np.zeros(1 << k, dtype=np.int64)
    sums = np.empty(1 << k, dtype=np.int64)
    sums[0] = -sum(int(w) for w in weights)
    size = 1
    for bit, w in enumerate(weights):
        masks[size:2 * size] = masks[size - 1::-1] | (1 << bit)
        sums[size:2 * size] = sums[size - 1::-1] + 2 * int(w)
        size *= 2
    return masks, sums


def popcounts(masks: np.ndarray) -> np.ndarray:
    """Bit counts of a nonnegative int64 array."""
    x = masks.astype(np.uint64)
    count = np.zeros(x.shape, dtype=np.int64)
    while np.any(x):
        count += (x & np.uint64(1)).astype(np.int64)
        x >>= np.uint64(1)
    return count

"""Index sets and r-admissibility.

An index set ``I`` of ``{1..n-2}`` fixes signs ``eps_i = +1`` on ``I`` and
``-1`` off it.  With ``s = sum(eps_i r_i)`` and the last two lengths
``a = r_{n-1}``, ``b = r_n``, ``I`` is admissible when the triangle with
sides ``s, a, b`` closes strictly::

    s + a - b > 0,   s - a + b > 0,   -s + a + b > 0

equivalently ``|a - b| < s < a + b``.  Enumeration walks subsets in Gray
order on integer-scaled lengths, so every comparison is exact.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

from ._kernels import fits_int64, gray_table, gray_walk, popcounts
from .errors import InputError
from .lengths import LengthVector

__all__ = [
    "IndexSet",
    "AdmissibleFamily",
    "is_admissible",
    "enumerate_admissible",
    "admissible_histogram",
]

# below this many free indices the pure-Python walk beats numpy setup cost
_SMALL = 12


@dataclass(frozen=True, order=True)
class IndexSet:
    """Subset of ``{1..n-2}``; index ``i`` is stored as bit ``i - 1`` of ``mask``."""

    n: int
    mask: int

    def __post_init__(self):
        if self.n < 3:
            raise InputError(f"index sets need n >= 3, got {self.n}")
        if self.mask < 0 or self.mask >> (self.n - 2):
            raise InputError(f"mask {self.mask:#b} has bits outside 1..{self.n - 2}")

    @classmethod
    def from_indices(cls, indices: Iterable[int], n: int) -> IndexSet:
        mask = 0
        for i in indices:
            if not 1 <= i <= n - 2:
                raise InputError(f"index {i} outside 1..{n - 2}")
            mask |= 1 << (i - 1)
        return cls(n, mask)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.n - 2) if self.mask >> i & 1)

    @property
    def cardinality(self) -> int:
        return self.mask.bit_count()

    def complement(self) -> IndexSet:
        return IndexSet(self.n, ~self.mask & ((1 << (self.n - 2)) - 1))

    def signs(self) -> tuple[int, ...]:
        return tuple(1 if self.mask >> i & 1 else -1 for i in range(self.n - 2))

    def to_json(self) -> list[int]:
        return list(self.indices)

    def __repr__(self) -> str:
        return f"IndexSet({set(self.indices) or '{}'}, n={self.n})"


@dataclass(frozen=True)
class AdmissibleFamily:
    n: int
    sets: tuple[IndexSet, ...]
    histogram: dict[int, int] = field(compare=False)

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self) -> Iterator[IndexSet]:
        return iter(self.sets)

    def __contains__(self, item) -> bool:
        return item in self.sets

    def index_lists(self) -> list[tuple[int, ...]]:
        return [s.indices for s in self.sets]


def _signed_sum(r: LengthVector, index_set: IndexSet) -> Fraction:
    return sum((e * x for e, x in zip(index_set.signs(), r.entries)), Fraction(0))


def is_admissible(r: LengthVector, index_set: IndexSet) -> bool:
    if index_set.n != r.n:
        raise InputError(f"index set built for n={index_set.n}, lengths have n={r.n}")
    s = _signed_sum(r, index_set)
    a, b = r[-2], r[-1]
    return s + a - b > 0 and s - a + b > 0 and -s + a + b > 0


def _bounds(r: LengthVector) -> tuple[list[int], int, int]:
    w = r.integer_weights()
    a, b = w[-2], w[-1]
    return w[:-2], abs(a - b), a + b


def _split(m: int) -> int:
    return (m + 1) // 2


def _chunks(n_items: int, threads: int) -> list[slice]:
    threads = max(1, min(threads, n_items))
    edges = np.linspace(0, n_items, threads + 1).astype(int)
    return [slice(int(lo), int(hi)) for lo, hi in zip(edges[:-1], edges[1:])]


def _run(fn, parts, threads):
    if threads <= 1 or len(parts) == 1:
        return [fn(p) for p in parts]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, parts))


def _admissible_masks(r: LengthVector, threads: int) -> list[int]:
    free, lo, hi = _bounds(r)
    m = len(free)
    if m <= _SMALL or not fits_int64(free + [hi]):
        return sorted(mask for mask, s in gray_walk(free) if lo < s < hi)

    low_bits = _split(m)
    low_masks, low_sums = gray_table(free[:low_bits])
    order = np.argsort(low_sums, kind="stable")
    low_masks, low_sums = low_masks[order], low_sums[order]
    # the high table carries the signed sum of the remaining lengths
    high_masks, high_sums = gray_table(free[low_bits:])

    def block(part: slice) -> np.ndarray:
        offsets = high_sums[part]
        start = np.searchsorted(low_sums, lo - offsets, side="right")
        stop = np.searchsorted(low_sums, hi - offsets, side="left")
        out = []
        for hmask, i, j in zip(high_masks[part], start, stop):
            if j > i:
                out.append(low_masks[i:j] | (int(hmask) << low_bits))
        return np.concatenate(out) if out else np.empty(0, dtype=np.int64)

    pieces = _run(block, _chunks(len(high_sums), threads), threads)
    return np.sort(np.concatenate(pieces)).tolist()


def enumerate_admissible(r: LengthVector, threads: int = 1) -> AdmissibleFamily:
    """All r-admissible index sets, sorted by mask.

    The distinguished pair is ``(r_{n-1}, r_n)``; callers wanting another
    pair permute ``r`` first.
    """
    masks = _admissible_masks(r, threads)
    sets = tuple(IndexSet(r.n, m) for m in masks)
    histogram: dict[int, int] = {}
    for s in sets:
        histogram[s.cardinality] = histogram.get(s.cardinality, 0) + 1
    return AdmissibleFamily(r.n, sets, dict(sorted(histogram.items())))


def admissible_histogram(r: LengthVector, threads: int = 1) -> dict[int, int]:
    """Counts of admissible index sets per cardinality, without listing them.

    For large ``n`` the low half of the indices is tabulated once and
    sorted by signed sum within each cardinality class; the high half is
    walked in Gray order and each step counts its admissible completions
    with two binary searches per class.
    """
    free, lo, hi = _bounds(r)
    m = len(free)
    counts = np.zeros(m + 1, dtype=np.int64)
    if m <= _SMALL or not fits_int64(free + [hi]):
        hist: dict[int, int] = {}
        for mask, s in gray_walk(free):
            if lo < s < hi:
                k = mask.bit_count()
                hist[k] = hist.get(k, 0) + 1
        return dict(sorted(hist.items()))

    low_bits = _split(m)
    low_masks, low_sums = gray_table(free[:low_bits])
    low_pc = popcounts(low_masks)
    classes = [(k, np.sort(low_sums[low_pc == k])) for k in range(low_bits + 1)]
    high_masks, high_sums = gray_table(free[low_bits:])
    high_pc = popcounts(high_masks)

    def block(part: slice) -> np.ndarray:
        offsets = high_sums[part]
        pc = high_pc[part]
        local = np.zeros(m + 1, dtype=np.int64)
        for k, sums in classes:
            hits = (np.searchsorted(sums, hi - offsets, side="left")
                    - np.searchsorted(sums, lo - offsets, side="right"))
            np.add.at(local, pc + k, hits)
        return local

    for local in _run(block, _chunks(len(high_sums), threads), threads):
        counts += local
    return {k: int(c) for k, c in enumerate(counts) if c}

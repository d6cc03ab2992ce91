"""Exact length vectors, walls and chambers.

Lengths are stored as :class:`fractions.Fraction` so that the strict
inequalities deciding admissibility and the equalities defining walls are
evaluated without rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

from ._kernels import fits_int64, gray_table, gray_walk
from .errors import InputError

__all__ = [
    "LengthVector",
    "ChamberSignature",
    "parse_rational",
    "format_rational",
    "normalize",
    "is_nonempty",
    "is_smooth",
    "degenerate_partition",
    "chamber_signature",
]


def parse_rational(value) -> Fraction:
    """Convert ``value`` to an exact :class:`Fraction`.

    Accepts integers, fractions, strings such as ``"3/2"``, ``"1.5"`` or
    ``"1e-3"``, and floats.  Floats go through their shortest ``repr`` so
    that ``1.5`` and ``0.1`` become ``3/2`` and ``1/10`` rather than the
    nearest binary fraction.
    """
    if isinstance(value, bool):
        raise InputError(f"not a length: {value!r}")
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise InputError(f"not a finite length: {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse {value!r} as a rational") from exc
    raise InputError(f"cannot interpret {value!r} as a rational")


def format_rational(q: Fraction) -> str:
    """``"p/q"``, or ``"p"`` when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class LengthVector:
    """Side lengths ``r_1..r_n`` of a polygon, positive and exact.

    Indices in the public API are 1-based, matching the usual labelling of
    edges; ``r[0]`` is ``r_1``.
    """

    entries: tuple[Fraction, ...]

    def __init__(self, entries: Iterable):
        values = tuple(parse_rational(x) for x in entries)
        if len(values) < 3:
            raise InputError(f"need at least 3 lengths, got {len(values)}")
        for i, x in enumerate(values, start=1):
            if x <= 0:
                raise InputError(f"length r_{i} = {format_rational(x)} is not positive")
        object.__setattr__(self, "entries", values)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __repr__(self) -> str:
        return f"LengthVector({', '.join(format_rational(x) for x in self.entries)})"

    @property
    def total(self) -> Fraction:
        return sum(self.entries, Fraction(0))

    def scaled(self, factor) -> LengthVector:
        factor = parse_rational(factor)
        return LengthVector(factor * x for x in self.entries)

    def permuted(self, order: Sequence[int]) -> LengthVector:
        """Reorder by 0-based ``order``: entry ``k`` of the result is ``self[order[k]]``."""
        if sorted(order) != list(range(self.n)):
            raise InputError(f"{order!r} is not a permutation of range({self.n})")
        return LengthVector(self.entries[i] for i in order)

    def is_equilateral(self) -> bool:
        return len(set(self.entries)) == 1

    def integer_weights(self) -> list[int]:
        """The lengths times the LCM of their denominators.

        Signs of every signed sum are unchanged by this common scaling.
        """
        lcm = math.lcm(*(x.denominator for x in self.entries))
        return [int(x * lcm) for x in self.entries]

    def as_floats(self) -> np.ndarray:
        return np.array([float(x) for x in self.entries])

    def to_json(self) -> list[str]:
        return [format_rational(x) for x in self.entries]


def normalize(r: LengthVector) -> LengthVector:
    """Rescale so the lengths sum to 2 (the hypersimplex slice)."""
    return r.scaled(Fraction(2) / r.total)


def is_nonempty(r: LengthVector) -> bool:
    """True iff some closed polygon has side lengths ``r``."""
    longest = max(r.entries)
    return 2 * longest <= r.total


def degenerate_partition(r: LengthVector) -> tuple[int, ...] | None:
    """A sign vector ``eps`` with ``sum(eps_i * r_i) == 0``, or None.

    Meet in the middle on the integer weights: the signed sums of the first
    ``ceil(n/2)`` lengths (with ``eps_1 = +1`` fixed, which loses nothing
    since ``-eps`` is a solution whenever ``eps`` is) are hashed, and the
    second half probes for the negated sum.
    """
    w = r.integer_weights()
    if sum(w) % 2:
        # every signed sum has the parity of the plain sum
        return None
    n = len(w)
    h = (n + 1) // 2
    left, right = w[1:h], w[h:]
    if n <= 26 or not fits_int64(w):
        hashed = {}
        for mask, s in gray_walk(left):
            hashed.setdefault(s + w[0], mask)
        for rmask, t in gray_walk(right):
            lmask = hashed.get(-t)
            if lmask is not None:
                return _signs(n, 1 | lmask << 1 | rmask << h)
        return None
    lmasks, lsums = gray_table(left)
    lsums = lsums + w[0]
    rmasks, rsums = gray_table(right)
    common, li, ri = np.intersect1d(lsums, -rsums, assume_unique=False, return_indices=True)
    if common.size == 0:
        return None
    lmask, rmask = int(lmasks[li[0]]), int(rmasks[ri[0]])
    return _signs(n, 1 | lmask << 1 | rmask << h)


def _signs(n: int, mask: int) -> tuple[int, ...]:
    return tuple(1 if mask >> i & 1 else -1 for i in range(n))


def is_smooth(r: LengthVector) -> bool:
    """True iff no signed sum of the lengths vanishes (no collinear polygon)."""
    return degenerate_partition(r) is None


@dataclass(frozen=True)
class ChamberSignature:
    """Signs of ``sum_S r - sum_{S^c} r`` over canonical partitions.

    A canonical partition is a subset ``S`` of ``{1..n}`` containing 1 with
    ``2 <= |S| <= n - 2``; ``masks`` encode ``S`` with bit ``i - 1`` for
    index ``i`` and are listed in increasing order.
    """

    n: int
    masks: tuple[int, ...]
    signs: tuple[int, ...]

    def subsets(self) -> list[frozenset[int]]:
        return [frozenset(i + 1 for i in range(self.n) if m >> i & 1) for m in self.masks]

    def as_dict(self) -> dict[frozenset[int], int]:
        return dict(zip(self.subsets(), self.signs))

    def has_zero(self) -> bool:
        return 0 in self.signs

    def zero_partitions(self) -> list[frozenset[int]]:
        return [s for s, sign in self.as_dict().items() if sign == 0]


def chamber_signature(r: LengthVector) -> ChamberSignature:
    n = r.n
    w = r.integer_weights()
    entries = []
    # bit 0 is always in S; walk the other n - 1 bits
    for mask, s in gray_walk(w[1:]):
        size = 1 + mask.bit_count()
        if 2 <= size <= n - 2:
            value = s + w[0]
            entries.append((1 | mask << 1, (value > 0) - (value < 0)))
    entries.sort()
    return ChamberSignature(
        n=n,
        masks=tuple(m for m, _ in entries),
        signs=tuple(s for _, s in entries),
    )

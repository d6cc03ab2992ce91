"""Oriented S^1-cobordism class of a polygon space.

For smooth, nonempty ``r`` bent along the diagonal separating a chosen
pair of edges, every admissible index set ``I`` contributes a copy of
``CP^{n-3}`` with sign ``(-1)^(n - |I|)``; fixed submanifolds contribute
nothing.  For even ``n`` the projective spaces are odd dimensional and
bound, so the class is null whatever the signed count.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .admissible import admissible_histogram
from .errors import EmptyModuliError, InputError, NoPivotError, WallError
from .lengths import (
    LengthVector,
    degenerate_partition,
    format_rational,
    is_nonempty,
    parse_rational,
)

__all__ = [
    "Pivot",
    "CobordismClass",
    "default_pivot",
    "arrange",
    "cobordism_class",
    "equilateral_class",
    "perturbed_equilateral_check",
    "type2_submanifolds",
]


@dataclass(frozen=True)
class Pivot:
    """1-based indices of the two edges moved to positions ``n-1, n``."""

    i: int
    j: int

    def __post_init__(self):
        if self.i == self.j:
            raise InputError("pivot indices must differ")

    def validate(self, r: LengthVector) -> None:
        for k in (self.i, self.j):
            if not 1 <= k <= r.n:
                raise InputError(f"pivot index {k} outside 1..{r.n}")
        if r[self.i - 1] == r[self.j - 1]:
            raise InputError(
                f"pivot ({self.i}, {self.j}) has equal lengths; the last diagonal "
                "can vanish and bending is not a global circle action"
            )

    def to_json(self) -> list[int]:
        return [self.i, self.j]


def default_pivot(r: LengthVector) -> Pivot:
    """``(n-1, n)`` when those lengths differ, else the first pair ``i < j`` that does."""
    n = r.n
    if r[n - 2] != r[n - 1]:
        return Pivot(n - 1, n)
    for i in range(n):
        for j in range(i + 1, n):
            if r[i] != r[j]:
                return Pivot(i + 1, j + 1)
    raise NoPivotError(
        "equilateral length vector has no pivot pair; use equilateral_class "
        "or perturb one length"
    )


def arrange(r: LengthVector, pivot: Pivot) -> LengthVector:
    """Move the pivot edges to the end (``i`` then ``j``), keeping the rest in order."""
    pivot.validate(r)
    rest = [k for k in range(r.n) if k not in (pivot.i - 1, pivot.j - 1)]
    return r.permuted(rest + [pivot.i - 1, pivot.j - 1])


@dataclass(frozen=True)
class CobordismClass:
    """``coefficient * CP^dimension`` up to oriented S^1-cobordism."""

    n: int
    dimension: int
    coefficient: int
    histogram: dict[int, int]
    is_null: bool
    r: LengthVector | None = None
    pivot: Pivot | None = None

    @property
    def family_size(self) -> int:
        return sum(self.histogram.values())

    def __str__(self) -> str:
        if self.is_null and self.coefficient == 0:
            return "0"
        text = f"{self.coefficient} CP^{self.dimension}"
        if self.is_null:
            text += " ~ 0 (odd-dimensional summands bound)"
        return text

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r.to_json() if self.r is not None else None,
            "pivot": self.pivot.to_json() if self.pivot is not None else None,
            "dimension": self.dimension,
            "coefficient": self.coefficient,
            "null": self.is_null,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
        }


def _from_histogram(n, histogram, r=None, pivot=None) -> CobordismClass:
    coefficient = sum((-1) ** (n - k) * c for k, c in histogram.items())
    return CobordismClass(
        n=n,
        dimension=n - 3,
        coefficient=coefficient,
        histogram=dict(sorted(histogram.items())),
        is_null=coefficient == 0 or n % 2 == 0,
        r=r,
        pivot=pivot,
    )


def cobordism_class(r: LengthVector, pivot: Pivot | None = None, threads: int = 1) -> CobordismClass:
    """Signed count of isolated fixed points of the bending action.

    Raises :class:`WallError` for singular ``r``, :class:`EmptyModuliError`
    when no polygon closes and :class:`NoPivotError` for equilateral ``r``
    without an explicit pivot.
    """
    witness = degenerate_partition(r)
    if witness is not None:
        plus = [i + 1 for i, e in enumerate(witness) if e > 0]
        raise WallError(f"{r!r} lies on a wall: partition {plus} vs rest has zero signed sum", witness)
    if not is_nonempty(r):
        raise EmptyModuliError(f"{r!r}: longest side exceeds the sum of the others")
    if pivot is None:
        pivot = default_pivot(r)
    arranged = arrange(r, pivot)
    return _from_histogram(r.n, admissible_histogram(arranged, threads=threads), r, pivot)


def equilateral_class(n: int) -> CobordismClass:
    """Closed form for equilateral polygons, ``n = 2m + 1``."""
    if n < 3 or n % 2 == 0:
        raise InputError(f"equilateral polygon spaces are singular for even n (got n={n})")
    m = (n - 1) // 2
    count = comb(2 * m - 1, m)
    return _from_histogram(n, {m: count}, LengthVector([1] * n), None)


def perturbed_equilateral_check(n: int, epsilon) -> CobordismClass:
    """Class of ``(1, ..., 1, 1 + epsilon)`` computed by enumeration."""
    if n < 3 or n % 2 == 0:
        raise InputError(f"perturbed equilateral check needs odd n >= 3 (got n={n})")
    epsilon = parse_rational(epsilon)
    if epsilon <= 0:
        raise InputError(f"epsilon must be positive, got {format_rational(epsilon)}")
    r = LengthVector([1] * (n - 1) + [1 + epsilon])
    return cobordism_class(r)


def type2_submanifolds(r: LengthVector, pivot: Pivot | None = None) -> list[LengthVector]:
    """Length vectors of the fixed submanifolds where the pivot edges align.

    Parallel edges merge to ``a + b``, antiparallel ones to ``|a - b|``; only
    nonempty spaces are returned.  Each contributes a CP^1-bundle, which
    bounds, so none of them changes the class.
    """
    if pivot is None:
        pivot = default_pivot(r)
    arranged = arrange(r, pivot)
    if r.n < 4:
        return []
    head = list(arranged.entries[:-2])
    a, b = arranged[-2], arranged[-1]
    out = []
    for merged in (a + b, abs(a - b)):
        candidate = LengthVector(head + [merged])
        if is_nonempty(candidate):
            out.append(candidate)
    return out


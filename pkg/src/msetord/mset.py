"""Multisets of integers over a bounded value range.

A multiset is stored as an occurrence vector: a dense list of counts, one
slot per value of a :class:`ValueRange`.  The ordering implemented here is
the standard multiset ordering, which compares largest elements first::

    >>> r = ValueRange(0, 3)
    >>> mset_compare(mset_from_values([1, 1, 2], r), mset_from_values([1, 2, 2], r))
    <MsetOrdering.LESS: -1>

Every function in this module treats its arguments as immutable values.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import PreconditionError, RangeViolation

__all__ = [
    "ValueRange",
    "OccurrenceVector",
    "MsetOrdering",
    "mset_from_values",
    "mset_compare",
    "mset_replace",
]


@dataclass(frozen=True)
class ValueRange:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise RangeViolation(f"empty value range {self.lo}..{self.hi}")

    @property
    def width(self) -> int:
        return self.hi - self.lo + 1

    def __contains__(self, value) -> bool:
        return self.lo <= value <= self.hi

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.lo, self.hi + 1))

    def __str__(self):
        return f"{self.lo}..{self.hi}"


class MsetOrdering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    def mirror(self) -> "MsetOrdering":
        return MsetOrdering(-self.value)


class OccurrenceVector:
    """Counts of each value of ``range``; ``counts[i]`` belongs to value ``range.lo + i``."""

    __slots__ = ("range", "counts", "cardinality")

    def __init__(self, value_range: ValueRange, counts: Sequence[int] | None = None):
        if counts is None:
            counts = [0] * value_range.width
        elif len(counts) != value_range.width:
            raise RangeViolation(
                f"{len(counts)} counts given for range {value_range} of width {value_range.width}"
            )
        counts = tuple(counts)
        if any(c < 0 for c in counts):
            raise PreconditionError("occurrence counts must be non-negative")
        self.range = value_range
        self.counts = counts
        self.cardinality = sum(counts)

    def count(self, value: int) -> int:
        if value not in self.range:
            return 0
        return self.counts[value - self.range.lo]

    def values(self) -> list[int]:
        """Elements in ascending order, with repetition."""
        lo = self.range.lo
        return [lo + i for i, c in enumerate(self.counts) for _ in range(c)]

    def __len__(self):
        return self.cardinality

    def __eq__(self, other):
        if not isinstance(other, OccurrenceVector):
            return NotImplemented
        return self.range == other.range and self.counts == other.counts

    def __hash__(self):
        return hash((self.range, self.counts))

    def __repr__(self):
        return f"OccurrenceVector({self.range}, {{{{{', '.join(map(str, self.values()))}}}}})"


def mset_from_values(values: Iterable[int], value_range: ValueRange) -> OccurrenceVector:
    counts = [0] * value_range.width
    lo = value_range.lo
    for v in values:
        if v not in value_range:
            raise RangeViolation(f"value {v} outside range {value_range}")
        counts[v - lo] += 1
    return OccurrenceVector(value_range, counts)


def mset_compare(a: OccurrenceVector, b: OccurrenceVector) -> MsetOrdering:
    """Compare two multisets over the same range.

    Scans values from the top of the range down; at the first value whose
    counts differ, the multiset holding more copies of it is the greater one.
    """
    if a.range != b.range:
        raise RangeViolation(f"cannot compare multisets over {a.range} and {b.range}")
    ca, cb = a.counts, b.counts
    for i in range(len(ca) - 1, -1, -1):
        if ca[i] != cb[i]:
            return MsetOrdering.GREATER if ca[i] > cb[i] else MsetOrdering.LESS
    return MsetOrdering.EQUAL


def mset_replace(a: OccurrenceVector, out_value: int, in_value: int) -> OccurrenceVector:
    """Return a copy of ``a`` with one ``out_value`` swapped for ``in_value``."""
    r = a.range
    for v in (out_value, in_value):
        if v not in r:
            raise RangeViolation(f"value {v} outside range {r}")
    if a.counts[out_value - r.lo] < 1:
        raise PreconditionError(f"value {out_value} does not occur in the multiset")
    if out_value == in_value:
        return a
    counts = list(a.counts)
    counts[out_value - r.lo] -= 1
    counts[in_value - r.lo] += 1
    return OccurrenceVector(r, counts)

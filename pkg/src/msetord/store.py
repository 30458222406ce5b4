"""Trailed finite-domain store.

Each variable's domain is a bitset (a Python int, bit ``i`` standing for
value ``lo + i``) with cached min, max and size.  Every narrowing pushes the
removed bits onto a trail so that :meth:`DomainStore.undo_to` can restore the
exact earlier state.  An empty domain is never stored: the narrowing that
would empty it returns :attr:`Change.FAILURE` and leaves the domain alone.
"""
from __future__ import annotations

import enum
from array import array
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import ModelError, RangeViolation, UsageError
from .mset import ValueRange

__all__ = ["Change", "Domain", "DomainStore", "VarId"]

VarId = int


class Change(enum.Enum):
    CHANGED = "changed"
    UNCHANGED = "unchanged"
    FAILURE = "failure"


@dataclass(frozen=True)
class Domain:
    """Read-only snapshot of one variable's domain."""

    range: ValueRange
    membership: int
    size: int
    min: int
    max: int

    def values(self) -> list[int]:
        return list(_iter_bits(self.membership, self.range.lo))

    def __contains__(self, value):
        off = value - self.range.lo
        return off >= 0 and (self.membership >> off) & 1 == 1


def _iter_bits(bits: int, lo: int) -> Iterator[int]:
    while bits:
        low = bits & -bits
        yield lo + low.bit_length() - 1
        bits ^= low


class DomainStore:
    """Domains of all variables of one model, with chronological backtracking.

    ``mins`` and ``maxs`` are ``array('q')`` caches indexed by variable; the
    compiled filtering kernel reads them directly and they must only be
    mutated through the store's methods.
    """

    def __init__(self, lo: int, hi: int):
        self.range = ValueRange(lo, hi)
        self.lo = lo
        self.mins = array("q")
        self.maxs = array("q")
        self.sizes = array("q")
        self._bits: list[int] = []
        # (var, removed bits, old min, old max, old size)
        self._trail: list[tuple[int, int, int, int, int]] = []
        self._marks: list[int] = []
        self._touched: list[int] = []

    # -- construction -------------------------------------------------

    def new_var(self, values: Iterable[int]) -> VarId:
        bits = 0
        for v in values:
            if v not in self.range:
                raise RangeViolation(f"value {v} outside store range {self.range}")
            bits |= 1 << (v - self.lo)
        if not bits:
            raise ModelError("a variable needs a non-empty initial domain")
        return self._append(bits)

    def new_interval_var(self, lo: int, hi: int) -> VarId:
        """Faster :meth:`new_var` for the domain ``lo..hi``."""
        if lo > hi:
            raise ModelError(f"empty initial domain {lo}..{hi}")
        if lo not in self.range or hi not in self.range:
            raise RangeViolation(f"interval {lo}..{hi} outside store range {self.range}")
        return self._append(((1 << (hi - lo + 1)) - 1) << (lo - self.lo))

    def _append(self, bits: int) -> VarId:
        self._bits.append(bits)
        self.mins.append(self.lo + (bits & -bits).bit_length() - 1)
        self.maxs.append(self.lo + bits.bit_length() - 1)
        self.sizes.append(bits.bit_count())
        return len(self._bits) - 1

    def __len__(self):
        return len(self._bits)

    def check_var(self, v: VarId) -> None:
        if not (isinstance(v, int) and 0 <= v < len(self._bits)):
            raise ModelError(f"unknown variable {v!r}")

    # -- queries ------------------------------------------------------

    def min(self, v: VarId) -> int:
        return self.mins[v]

    def max(self, v: VarId) -> int:
        return self.maxs[v]

    def size(self, v: VarId) -> int:
        return self.sizes[v]

    def is_bound(self, v: VarId) -> bool:
        return self.sizes[v] == 1

    def contains(self, v: VarId, value: int) -> bool:
        off = value - self.lo
        return off >= 0 and (self._bits[v] >> off) & 1 == 1

    def values(self, v: VarId) -> list[int]:
        return list(_iter_bits(self._bits[v], self.lo))

    def membership(self, v: VarId) -> int:
        return self._bits[v]

    def domain(self, v: VarId) -> Domain:
        return Domain(self.range, self._bits[v], self.sizes[v], self.mins[v], self.maxs[v])

    def snapshot(self) -> tuple[int, ...]:
        """Hashable copy of every domain, for equality checks."""
        return tuple(self._bits)

    # -- narrowing ----------------------------------------------------

    def _commit(self, v: VarId, keep: int) -> Change:
        bits = self._bits[v]
        self._trail.append((v, bits ^ keep, self.mins[v], self.maxs[v], self.sizes[v]))
        self._bits[v] = keep
        self.mins[v] = self.lo + (keep & -keep).bit_length() - 1
        self.maxs[v] = self.lo + keep.bit_length() - 1
        self.sizes[v] = keep.bit_count()
        self._touched.append(v)
        return Change.CHANGED

    def prune_above(self, v: VarId, bound: int) -> Change:
        """Remove every value greater than ``bound``."""
        if bound >= self.maxs[v]:
            return Change.UNCHANGED
        if bound < self.mins[v]:
            return Change.FAILURE
        return self._commit(v, self._bits[v] & ((1 << (bound - self.lo + 1)) - 1))

    def prune_below(self, v: VarId, bound: int) -> Change:
        """Remove every value smaller than ``bound``."""
        if bound <= self.mins[v]:
            return Change.UNCHANGED
        if bound > self.maxs[v]:
            return Change.FAILURE
        off = bound - self.lo
        return self._commit(v, (self._bits[v] >> off) << off)

    def prune_above_many(self, vars: Sequence[VarId], bounds: Sequence[int]) -> Change:
        """:meth:`prune_above` for each pair; stops at the first failure."""
        bits, mins, maxs, sizes = self._bits, self.mins, self.maxs, self.sizes
        trail, touched, lo = self._trail, self._touched, self.lo
        changed = False
        for v, bound in zip(vars, bounds):
            if bound >= maxs[v]:
                continue
            if bound < mins[v]:
                return Change.FAILURE
            old = bits[v]
            keep = old & ((1 << (bound - lo + 1)) - 1)
            trail.append((v, old ^ keep, mins[v], maxs[v], sizes[v]))
            bits[v] = keep
            maxs[v] = lo + keep.bit_length() - 1
            sizes[v] = keep.bit_count()
            touched.append(v)
            changed = True
        return Change.CHANGED if changed else Change.UNCHANGED

    def prune_below_many(self, vars: Sequence[VarId], bounds: Sequence[int]) -> Change:
        """:meth:`prune_below` for each pair; stops at the first failure."""
        bits, mins, maxs, sizes = self._bits, self.mins, self.maxs, self.sizes
        trail, touched, lo = self._trail, self._touched, self.lo
        changed = False
        for v, bound in zip(vars, bounds):
            if bound <= mins[v]:
                continue
            if bound > maxs[v]:
                return Change.FAILURE
            old = bits[v]
            off = bound - lo
            keep = (old >> off) << off
            trail.append((v, old ^ keep, mins[v], maxs[v], sizes[v]))
            bits[v] = keep
            mins[v] = lo + (keep & -keep).bit_length() - 1
            sizes[v] = keep.bit_count()
            touched.append(v)
            changed = True
        return Change.CHANGED if changed else Change.UNCHANGED

    def remove(self, v: VarId, value: int) -> Change:
        if not self.contains(v, value):
            return Change.UNCHANGED
        if self.sizes[v] == 1:
            return Change.FAILURE
        return self._commit(v, self._bits[v] & ~(1 << (value - self.lo)))

    def assign(self, v: VarId, value: int) -> Change:
        if not self.contains(v, value):
            return Change.FAILURE
        if self.sizes[v] == 1:
            return Change.UNCHANGED
        return self._commit(v, 1 << (value - self.lo))

    def drain_touched(self) -> list[VarId]:
        """Variables changed since the last drain, in change order (may repeat)."""
        touched, self._touched = self._touched, []
        return touched

    # -- backtracking -------------------------------------------------

    def mark(self) -> int:
        self._marks.append(len(self._trail))
        return len(self._marks)

    @property
    def depth(self) -> int:
        return len(self._marks)

    def undo_to(self, token: int) -> None:
        """Restore the domains recorded by the mark ``token``.

        Marks must be undone innermost first.
        """
        if token != len(self._marks) or token == 0:
            raise UsageError(
                f"undo_to({token}) out of order; innermost live mark is {len(self._marks)}"
            )
        stop = self._marks.pop()
        trail = self._trail
        bits, mins, maxs, sizes = self._bits, self.mins, self.maxs, self.sizes
        while len(trail) > stop:
            v, removed, old_min, old_max, old_size = trail.pop()
            bits[v] |= removed
            mins[v] = old_min
            maxs[v] = old_max
            sizes[v] = old_size
        self._touched.clear()

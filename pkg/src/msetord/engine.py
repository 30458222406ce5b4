"""Depth-first search over a trailed store.

Propagation runs a FIFO queue of constraints to a fixpoint.  Branching is
static: the first unbound variable in creation order, values tried in
ascending order.  No heuristics, so node counts are reproducible and can
be compared across symmetry-breaking schemes.
"""
from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import ModelError
from .propagators import LexLeq, MsetOrderingConstraint, PropagationOutcome, SumEq, SumGeq
from .store import DomainStore, VarId

__all__ = ["Model", "SearchStats", "propagate_to_fixpoint", "solve_all", "solve_first"]


@dataclass
class SearchStats:
    nodes: int = 0
    failures: int = 0
    solutions: int = 0
    propagations: int = 0
    elapsed: float = 0.0


class Model:
    """Variables plus constraints.  Every constraint needs ``scope`` and ``propagate(store)``."""

    def __init__(self, lo: int, hi: int):
        self.store = DomainStore(lo, hi)
        self.constraints: list = []
        self._watchers: list[list[int]] = []
        self._active: list[bool] = []
        self._deactivated: list[int] = []
        self._marks: list[int] = []

    def var(self, values: Iterable[int]) -> VarId:
        v = self.store.new_var(values)
        self._watchers.append([])
        return v

    def interval_var(self, lo: int, hi: int) -> VarId:
        v = self.store.new_interval_var(lo, hi)
        self._watchers.append([])
        return v

    @property
    def num_vars(self) -> int:
        return len(self.store)

    def add(self, constraint):
        for v in constraint.scope:
            if not 0 <= v < len(self._watchers):
                raise ModelError(f"constraint {constraint!r} refers to unknown variable {v}")
        index = len(self.constraints)
        self.constraints.append(constraint)
        self._active.append(True)
        for v in constraint.scope:
            self._watchers[v].append(index)
        return constraint

    def msetord(self, xs: Sequence[VarId], ys: Sequence[VarId], strict: bool = False):
        return self.add(MsetOrderingConstraint(self.store, xs, ys, strict))

    def sum_eq(self, vars: Sequence[VarId], total: int):
        return self.add(SumEq(self.store, vars, total))

    def sum_geq(self, weights: Sequence[int], vars: Sequence[VarId], bound: int):
        return self.add(SumGeq(self.store, weights, vars, bound))

    def lex_leq(self, xs: Sequence[VarId], ys: Sequence[VarId]):
        return self.add(LexLeq(self.store, xs, ys))

    # Entailed constraints are switched off until search backtracks past the
    # point where they were switched off.
    def mark(self) -> int:
        self._marks.append(len(self._deactivated))
        return self.store.mark()

    def undo_to(self, token: int) -> None:
        self.store.undo_to(token)
        stop = self._marks.pop()
        while len(self._deactivated) > stop:
            self._active[self._deactivated.pop()] = True

    def deactivate(self, index: int) -> None:
        if self._active[index]:
            self._active[index] = False
            self._deactivated.append(index)

    def is_active(self, index: int) -> bool:
        return self._active[index]

    def values(self) -> tuple[int, ...]:
        """Current assignment; every variable must be bound."""
        store = self.store
        return tuple(store.mins[v] for v in range(len(store)))


def propagate_to_fixpoint(model: Model, stats: Optional[SearchStats] = None,
                          everything: bool = True) -> PropagationOutcome:
    """Run propagators until no domain changes.

    With ``everything`` false only constraints watching variables changed
    since the store was last drained are scheduled.
    """
    store = model.store
    constraints = model.constraints
    watchers = model._watchers
    active = model._active
    queued = [False] * len(constraints)
    queue: deque[int] = deque()

    def schedule(index):
        if active[index] and not queued[index]:
            queued[index] = True
            queue.append(index)

    if everything:
        store.drain_touched()
        for i in range(len(constraints)):
            schedule(i)
    else:
        for v in store.drain_touched():
            for i in watchers[v]:
                schedule(i)

    while queue:
        i = queue.popleft()
        queued[i] = False
        outcome = constraints[i].propagate(store)
        if stats is not None:
            stats.propagations += 1
        touched = store.drain_touched()
        if outcome is PropagationOutcome.FAILURE:
            return outcome
        if outcome is PropagationOutcome.ENTAILED:
            model.deactivate(i)
        for v in touched:
            for j in watchers[v]:
                if j != i:
                    schedule(j)
    return PropagationOutcome.FIXPOINT


def _search(model: Model, stats: SearchStats, solutions: list, limit: Optional[int], start: int):
    store = model.store
    n = len(store)
    v = start
    while v < n and store.sizes[v] == 1:
        v += 1
    if v == n:
        solutions.append(model.values())
        stats.solutions += 1
        return
    for value in store.values(v):
        token = model.mark()
        stats.nodes += 1
        store.assign(v, value)
        if propagate_to_fixpoint(model, stats, everything=False) is PropagationOutcome.FAILURE:
            stats.failures += 1
        else:
            _search(model, stats, solutions, limit, v + 1)
        model.undo_to(token)
        if limit is not None and len(solutions) >= limit:
            return


def solve_all(model: Model, limit: Optional[int] = None) -> tuple[list[tuple[int, ...]], SearchStats]:
    """All solutions in search order, optionally capped at ``limit``.

    The model's domains are left as they were before the call.
    """
    stats = SearchStats()
    solutions: list[tuple[int, ...]] = []
    started = time.perf_counter()
    token = model.mark()
    try:
        if limit is not None and limit <= 0:
            pass
        elif propagate_to_fixpoint(model, stats) is PropagationOutcome.FAILURE:
            stats.failures += 1
        else:
            _search(model, stats, solutions, limit, 0)
    finally:
        model.undo_to(token)
        stats.elapsed = time.perf_counter() - started
    return solutions, stats


def solve_first(model: Model) -> tuple[Optional[tuple[int, ...]], SearchStats]:
    solutions, stats = solve_all(model, limit=1)
    return (solutions[0] if solutions else None), stats

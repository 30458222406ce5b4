"""Propagators: the multiset ordering constraint and the side constraints used by the benchmark models.

Every constraint object exposes ``scope`` (the variables it watches) and
``propagate(store)`` returning a :class:`PropagationOutcome`.  The module
level ``propagate_*`` functions are the same algorithms in functional form.
"""
from __future__ import annotations

import enum
from array import array
from typing import Sequence

from . import kernel
from .errors import ModelError
from .mset import OccurrenceVector, ValueRange, mset_from_values
from .store import Change, DomainStore, VarId

__all__ = [
    "PropagationOutcome",
    "MsetOrderingConstraint",
    "SumEq",
    "SumGeq",
    "LexLeq",
    "floors",
    "ceilings",
    "check_disentailed",
    "check_entailed",
    "propagate_msetord",
    "propagate_sum_eq",
    "propagate_sum_geq",
    "propagate_lex_leq",
]


class PropagationOutcome(enum.Enum):
    FIXPOINT = "fixpoint"
    FAILURE = "failure"
    ENTAILED = "entailed"


def _check_vars(store: DomainStore, vars: Sequence[VarId]) -> None:
    for v in vars:
        store.check_var(v)


def _distinct_with_multiplicity(vars: Sequence[VarId]) -> tuple[array, array]:
    counts: dict[int, int] = {}
    for v in vars:
        counts[v] = counts.get(v, 0) + 1
    return array("q", counts.keys()), array("q", counts.values())


class MsetOrderingConstraint:
    """``xs`` is less than or equal to ``ys`` as multisets (``strict``: less than).

    A variable may occur several times on one side and then contributes one
    element per occurrence; a variable on both sides is rejected.
    """

    def __init__(self, store: DomainStore, xs: Sequence[VarId], ys: Sequence[VarId],
                 strict: bool = False):
        xs, ys = tuple(xs), tuple(ys)
        _check_vars(store, xs + ys)
        shared = set(xs) & set(ys)
        if shared:
            raise ModelError(f"variables {sorted(shared)} appear on both sides of a multiset ordering")
        self.xs = xs
        self.ys = ys
        self.strict = bool(strict)
        self.scope = tuple(dict.fromkeys(xs + ys))
        self._xvars, self._xmult = _distinct_with_multiplicity(xs)
        self._yvars, self._ymult = _distinct_with_multiplicity(ys)
        if self.scope:
            lo = min(store.min(v) for v in self.scope)
            hi = max(store.max(v) for v in self.scope)
        else:
            lo = hi = 0
        self.range = ValueRange(lo, hi)

    def propagate(self, store: DomainStore) -> PropagationOutcome:
        return propagate_msetord(store, self)

    def __repr__(self):
        rel = "<m" if self.strict else "<=m"
        return f"MsetOrderingConstraint({list(self.xs)} {rel} {list(self.ys)})"


def floors(store: DomainStore, vars: Sequence[VarId],
           value_range: ValueRange | None = None) -> OccurrenceVector:
    """Multiset of the domain minima of ``vars``."""
    return mset_from_values((store.min(v) for v in vars), value_range or store.range)


def ceilings(store: DomainStore, vars: Sequence[VarId],
             value_range: ValueRange | None = None) -> OccurrenceVector:
    """Multiset of the domain maxima of ``vars``."""
    return mset_from_values((store.max(v) for v in vars), value_range or store.range)


def _accepts(c: MsetOrderingConstraint, sign: int) -> bool:
    return sign < 0 if c.strict else sign <= 0


def _bound_order(store, c, vals_x, vals_y) -> int:
    r = c.range
    return kernel.compare_bound_msets(vals_x, c._xvars, c._xmult, vals_y, c._yvars, c._ymult,
                                      r.lo, r.width)


def check_disentailed(store: DomainStore, c: MsetOrderingConstraint) -> bool:
    """True iff no assignment from the current domains satisfies ``c``.

    Lowering an x or raising a y never turns a solution into a non-solution,
    so ``c`` is satisfiable exactly when the x floors are ordered below the y
    ceilings.
    """
    return not _accepts(c, _bound_order(store, c, store.mins, store.maxs))


def check_entailed(store: DomainStore, c: MsetOrderingConstraint) -> bool:
    """True iff every assignment from the current domains satisfies ``c``."""
    return _accepts(c, _bound_order(store, c, store.maxs, store.mins))


def propagate_msetord(store: DomainStore, c: MsetOrderingConstraint) -> PropagationOutcome:
    """Enforce generalised arc consistency on ``c`` in O(n + m + d).

    Each x only loses a top segment of its domain and each y a bottom
    segment, so the kernel reports one bound per variable to prune.
    """
    r = c.range
    ok, prunes = kernel.msetord_filter(
        store.mins, store.maxs, c._xvars, c._xmult, c._yvars, c._ymult, r.lo, r.width, c.strict)
    if not ok:
        return PropagationOutcome.FAILURE
    x_vars, x_bounds, y_vars, y_bounds = prunes
    if (store.prune_above_many(x_vars, x_bounds) is Change.FAILURE
            or store.prune_below_many(y_vars, y_bounds) is Change.FAILURE):
        return PropagationOutcome.FAILURE
    if check_entailed(store, c):
        return PropagationOutcome.ENTAILED
    return PropagationOutcome.FIXPOINT


def propagate_sum_eq(store: DomainStore, vars: Sequence[VarId], total: int) -> PropagationOutcome:
    """Bounds consistency for ``sum(vars) == total``, iterated until stable."""
    mins, maxs = store.mins, store.maxs
    changed = True
    while changed:
        changed = False
        smin = sum(mins[v] for v in vars)
        smax = sum(maxs[v] for v in vars)
        if smin > total or smax < total:
            return PropagationOutcome.FAILURE
        for v in vars:
            lo_v, hi_v = mins[v], maxs[v]
            raised = store.prune_below(v, total - (smax - hi_v))
            lowered = store.prune_above(v, total - (smin - lo_v))
            if Change.FAILURE in (raised, lowered):
                return PropagationOutcome.FAILURE
            if Change.CHANGED in (raised, lowered):
                changed = True
                break
    if all(store.is_bound(v) for v in vars):
        return PropagationOutcome.ENTAILED
    return PropagationOutcome.FIXPOINT


def propagate_sum_geq(store: DomainStore, weights: Sequence[int], vars: Sequence[VarId],
                      bound: int) -> PropagationOutcome:
    """Bounds consistency for ``sum(w * x) >= bound`` with non-negative weights."""
    maxs = store.maxs
    smax = sum(w * maxs[v] for w, v in zip(weights, vars))
    if smax < bound:
        return PropagationOutcome.FAILURE
    for w, v in zip(weights, vars):
        if w > 0:
            need = bound - (smax - w * maxs[v])
            if store.prune_below(v, -(-need // w)) is Change.FAILURE:
                return PropagationOutcome.FAILURE
    if sum(w * store.mins[v] for w, v in zip(weights, vars)) >= bound:
        return PropagationOutcome.ENTAILED
    return PropagationOutcome.FIXPOINT


def _lex_first_diff(a, b, start: int) -> int:
    for i in range(start, len(a)):
        if a[i] != b[i]:
            return i
    return len(a)


def propagate_lex_leq(store: DomainStore, xs: Sequence[VarId], ys: Sequence[VarId]) -> PropagationOutcome:
    """Generalised arc consistency for ``xs <=lex ys``.

    Same monotone support argument as the multiset ordering: a value of
    ``x_i`` is supported iff it works with every other x at its minimum and
    every y at its maximum.
    """
    xmin = [store.min(v) for v in xs]
    ymax = [store.max(v) for v in ys]
    n = len(xs)
    e = _lex_first_diff(xmin, ymax, 0)
    if e < n and xmin[e] > ymax[e]:
        return PropagationOutcome.FAILURE
    for i in range(e):
        # x_i and y_i must both take the tied value
        if store.prune_above(xs[i], ymax[i]) is Change.FAILURE:
            return PropagationOutcome.FAILURE
        if store.prune_below(ys[i], xmin[i]) is Change.FAILURE:
            return PropagationOutcome.FAILURE
    if e < n:
        j = _lex_first_diff(xmin, ymax, e + 1)
        tail_ok = j == n or xmin[j] < ymax[j]
        slack = 0 if tail_ok else 1
        if store.prune_above(xs[e], ymax[e] - slack) is Change.FAILURE:
            return PropagationOutcome.FAILURE
        if store.prune_below(ys[e], xmin[e] + slack) is Change.FAILURE:
            return PropagationOutcome.FAILURE
    xmax = [store.max(v) for v in xs]
    ymin = [store.min(v) for v in ys]
    if xmax <= ymin:
        return PropagationOutcome.ENTAILED
    return PropagationOutcome.FIXPOINT


class SumEq:
    def __init__(self, store: DomainStore, vars: Sequence[VarId], total: int):
        _check_vars(store, vars)
        self.vars = tuple(vars)
        self.total = total
        self.scope = tuple(dict.fromkeys(self.vars))

    def propagate(self, store):
        return propagate_sum_eq(store, self.vars, self.total)

    def __repr__(self):
        return f"SumEq({list(self.vars)} == {self.total})"


class SumGeq:
    def __init__(self, store: DomainStore, weights: Sequence[int], vars: Sequence[VarId], bound: int):
        _check_vars(store, vars)
        if len(weights) != len(vars):
            raise ModelError("one weight per variable is required")
        if any(w < 0 for w in weights):
            raise ModelError("sum_geq weights must be non-negative")
        self.weights = tuple(weights)
        self.vars = tuple(vars)
        self.bound = bound
        self.scope = tuple(dict.fromkeys(self.vars))

    def propagate(self, store):
        return propagate_sum_geq(store, self.weights, self.vars, self.bound)

    def __repr__(self):
        return f"SumGeq({list(zip(self.weights, self.vars))} >= {self.bound})"


class LexLeq:
    """``xs <=lex ys`` over two equal-length vectors of distinct variables."""

    def __init__(self, store: DomainStore, xs: Sequence[VarId], ys: Sequence[VarId]):
        xs, ys = tuple(xs), tuple(ys)
        _check_vars(store, xs + ys)
        if len(xs) != len(ys):
            raise ModelError("lex ordering needs vectors of equal length")
        if len(set(xs + ys)) != len(xs) + len(ys):
            raise ModelError("lex ordering needs pairwise distinct variables")
        self.xs = xs
        self.ys = ys
        self.scope = xs + ys

    def propagate(self, store):
        return propagate_lex_leq(store, self.xs, self.ys)

    def __repr__(self):
        return f"LexLeq({list(self.xs)} <=lex {list(self.ys)})"

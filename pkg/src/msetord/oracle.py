"""Brute-force reference implementations for differential testing.

Nothing here reuses the occurrence-vector code or the propagators: multisets
are compared by sorting, and consistency is decided by enumerating every
complete assignment.  These functions are slow on purpose and refuse
instances above :data:`ENUMERATION_GUARD` assignments.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import OracleScopeError
from .mset import MsetOrdering

ENUMERATION_GUARD = 10**7


@dataclass(frozen=True)
class OracleInstance:
    x_domains: tuple[frozenset, ...]
    y_domains: tuple[frozenset, ...]
    strict: bool = False

    @classmethod
    def of(cls, x_domains: Iterable[Iterable[int]], y_domains: Iterable[Iterable[int]],
           strict: bool = False) -> "OracleInstance":
        return cls(tuple(frozenset(d) for d in x_domains),
                   tuple(frozenset(d) for d in y_domains), strict)

    def assignment_count(self) -> int:
        return math.prod(len(d) for d in self.x_domains + self.y_domains)


def _sort_key(values: Sequence[int]) -> list[int]:
    return sorted(values, reverse=True)


def oracle_compare(a: Sequence[int], b: Sequence[int]) -> MsetOrdering:
    """Order two multisets given as plain sequences.

    Python list comparison is lexicographic with a proper prefix ordered
    first, which is exactly the multiset order once both sides are sorted
    in descending order.
    """
    ka, kb = _sort_key(a), _sort_key(b)
    if ka < kb:
        return MsetOrdering.LESS
    if ka > kb:
        return MsetOrdering.GREATER
    return MsetOrdering.EQUAL


def _guard(inst: OracleInstance) -> None:
    if any(not d for d in inst.x_domains + inst.y_domains):
        return
    count = inst.assignment_count()
    if count > ENUMERATION_GUARD:
        raise OracleScopeError(f"{count} assignments exceed the oracle guard of {ENUMERATION_GUARD}")


def _side(domains):
    tuples = list(itertools.product(*(sorted(d) for d in domains)))
    return tuples, [_sort_key(t) for t in tuples]


def _satisfied(kx, ky, strict):
    return kx < ky if strict else kx <= ky


def oracle_gac(inst: OracleInstance):
    """GAC domains by enumeration, or ``None`` when nothing satisfies the constraint.

    Returns ``(x_domains, y_domains)`` as tuples of frozensets.
    """
    _guard(inst)
    xt, xk = _side(inst.x_domains)
    yt, yk = _side(inst.y_domains)
    x_keep = [set() for _ in inst.x_domains]
    y_keep = [set() for _ in inst.y_domains]
    y_used = [False] * len(yt)
    found = False
    for tx, kx in zip(xt, xk):
        hit = False
        for j, ky in enumerate(yk):
            if _satisfied(kx, ky, inst.strict):
                hit = True
                y_used[j] = True
        if hit:
            found = True
            for i, v in enumerate(tx):
                x_keep[i].add(v)
    if not found:
        return None
    for ty, used in zip(yt, y_used):
        if used:
            for j, w in enumerate(ty):
                y_keep[j].add(w)
    return tuple(map(frozenset, x_keep)), tuple(map(frozenset, y_keep))


def oracle_satisfiable(inst: OracleInstance) -> bool:
    _guard(inst)
    _, xk = _side(inst.x_domains)
    _, yk = _side(inst.y_domains)
    return any(_satisfied(kx, ky, inst.strict) for kx in xk for ky in yk)


def oracle_solutions(domains: Sequence[Iterable[int]], predicate) -> list[tuple[int, ...]]:
    """Every assignment of ``domains`` (ascending, first variable slowest) accepted by ``predicate``."""
    doms = [sorted(d) for d in domains]
    if math.prod(len(d) for d in doms) > ENUMERATION_GUARD:
        raise OracleScopeError("cartesian product exceeds the oracle guard")
    return [t for t in itertools.product(*doms) if predicate(t)]

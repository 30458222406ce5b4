"""Rank assignments of a small soft CSP by their multiset of violation costs.

Problem file::

    var x : 0,1
    var y : 0,1
    soft c1 on x y : 0,0=2 ; 1,1=1
    soft c2 on y : 0=1

Tuples not listed in a cost table cost 0.  Assignments whose cost multiset
is minimal under the multiset ordering win: they make the worst violation
as small as possible first, then the next worst, and so on.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import ParseError
from .mset import MsetOrdering, OccurrenceVector, ValueRange, mset_compare, mset_from_values

MAX_COST = 4
MAX_ASSIGNMENTS = 10**5
COSTS = ValueRange(0, MAX_COST)


@dataclass(frozen=True)
class SoftConstraint:
    name: str
    scope: tuple[str, ...]
    costs: dict

    def cost(self, assignment: dict) -> int:
        return self.costs.get(tuple(assignment[v] for v in self.scope), 0)


@dataclass(frozen=True)
class FuzzyProblem:
    variables: dict  # name -> tuple of values, in declaration order
    constraints: tuple[SoftConstraint, ...]


def _ints(text: str, lineno: int) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise ParseError(f"bad integer list {text!r}", lineno) from None


def parse_problem(text: str) -> FuzzyProblem:
    variables: dict[str, tuple[int, ...]] = {}
    constraints = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        head, sep, body = rest.partition(":")
        if not sep:
            raise ParseError("missing ':'", lineno)
        if keyword == "var":
            name = head.strip()
            if not name or name in variables:
                raise ParseError(f"bad or duplicate variable name {name!r}", lineno)
            values = _ints(body, lineno)
            if not values:
                raise ParseError(f"variable {name} has an empty domain", lineno)
            variables[name] = tuple(sorted(set(values)))
        elif keyword == "soft":
            words = head.split()
            if len(words) < 3 or words[1] != "on":
                raise ParseError("expected 'soft <name> on <var> ...'", lineno)
            scope = tuple(words[2:])
            for v in scope:
                if v not in variables:
                    raise ParseError(f"unknown variable {v!r}", lineno)
            costs = {}
            for entry in body.split(";"):
                entry = entry.strip()
                if not entry:
                    continue
                tup, eq, cost = entry.partition("=")
                if not eq:
                    raise ParseError(f"cost entry {entry!r} lacks '='", lineno)
                key = _ints(tup, lineno)
                if len(key) != len(scope):
                    raise ParseError(f"tuple {tup!r} does not match scope {scope}", lineno)
                try:
                    c = int(cost)
                except ValueError:
                    raise ParseError(f"bad cost {cost!r}", lineno) from None
                if not 0 <= c <= MAX_COST:
                    raise ParseError(f"cost {c} outside 0..{MAX_COST}", lineno)
                costs[key] = c
            constraints.append(SoftConstraint(words[0], scope, costs))
        else:
            raise ParseError(f"unknown directive {keyword!r}", lineno)
    if not variables:
        raise ParseError("no variables declared")
    total = math.prod(len(d) for d in variables.values())
    if total > MAX_ASSIGNMENTS:
        raise ParseError(f"{total} assignments exceed the limit of {MAX_ASSIGNMENTS}")
    return FuzzyProblem(variables, tuple(constraints))


def cost_profile(problem: FuzzyProblem, assignment: dict) -> OccurrenceVector:
    return mset_from_values((c.cost(assignment) for c in problem.constraints), COSTS)


def best_assignments(problem: FuzzyProblem) -> tuple[OccurrenceVector, list[dict]]:
    """The minimal cost profile and every assignment achieving it, in enumeration order."""
    names = list(problem.variables)
    best = None
    winners: list[dict] = []
    for values in itertools.product(*problem.variables.values()):
        assignment = dict(zip(names, values))
        profile = cost_profile(problem, assignment)
        order = MsetOrdering.LESS if best is None else mset_compare(profile, best)
        if order is MsetOrdering.LESS:
            best, winners = profile, [assignment]
        elif order is MsetOrdering.EQUAL:
            winners.append(assignment)
    return best, winners


def format_profile(profile: OccurrenceVector) -> str:
    return "{{" + ",".join(map(str, reversed(profile.values()))) + "}}"

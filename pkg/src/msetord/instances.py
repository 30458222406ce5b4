"""Text instance files for a single multiset ordering constraint.

Format (``#`` starts a comment)::

    range 0 3
    rel leq          # or: rel lt
    x 2 : 1,2,3 | 1,2,3
    y 2 : 2 | 2
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ParseError
from .mset import ValueRange
from .propagators import MsetOrderingConstraint
from .store import DomainStore

__all__ = ["InstanceFile", "parse_instance", "format_instance", "build", "format_domain"]


@dataclass(frozen=True)
class InstanceFile:
    range: ValueRange
    x_domains: tuple[tuple[int, ...], ...]
    y_domains: tuple[tuple[int, ...], ...]
    strict: bool = False


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", lineno) from None


def _parse_vector(rest: str, lineno: int) -> tuple[tuple[int, ...], ...]:
    head, sep, body = rest.partition(":")
    if not sep:
        raise ParseError("missing ':' between vector length and domains", lineno)
    count = _int(head.strip(), lineno)
    if count < 0:
        raise ParseError("vector length must be non-negative", lineno)
    body = body.strip()
    parts = body.split("|") if body else []
    if len(parts) != count:
        raise ParseError(f"declared {count} domains, found {len(parts)}", lineno)
    domains = []
    for part in parts:
        values = [t for t in part.replace(" ", "").split(",") if t]
        if not values:
            raise ParseError("empty domain", lineno)
        domains.append(tuple(sorted({_int(t, lineno) for t in values})))
    return tuple(domains)


def parse_instance(text: str) -> InstanceFile:
    value_range = None
    strict = None
    vectors: dict[str, tuple] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "range":
            bounds = rest.split()
            if len(bounds) != 2:
                raise ParseError("range needs two integers", lineno)
            lo, hi = (_int(b, lineno) for b in bounds)
            if lo > hi:
                raise ParseError(f"empty range {lo}..{hi}", lineno)
            value_range = ValueRange(lo, hi)
        elif keyword == "rel":
            if rest not in ("leq", "lt"):
                raise ParseError(f"relation must be leq or lt, got {rest!r}", lineno)
            strict = rest == "lt"
        elif keyword in ("x", "y"):
            if keyword in vectors:
                raise ParseError(f"vector {keyword} declared twice", lineno)
            vectors[keyword] = _parse_vector(rest, lineno)
        else:
            raise ParseError(f"unknown directive {keyword!r}", lineno)
    if value_range is None:
        raise ParseError("missing 'range' line")
    for name in ("x", "y"):
        if name not in vectors:
            raise ParseError(f"missing '{name}' line")
        for dom in vectors[name]:
            for v in dom:
                if v not in value_range:
                    raise ParseError(f"value {v} of {name} outside range {value_range}")
    return InstanceFile(value_range, vectors["x"], vectors["y"], bool(strict))


def _format_vector(domains: Sequence[Sequence[int]]) -> str:
    return " | ".join(",".join(map(str, sorted(d))) for d in domains)


def format_instance(inst: InstanceFile) -> str:
    return (
        f"range {inst.range.lo} {inst.range.hi}\n"
        f"rel {'lt' if inst.strict else 'leq'}\n"
        f"x {len(inst.x_domains)} : {_format_vector(inst.x_domains)}\n"
        f"y {len(inst.y_domains)} : {_format_vector(inst.y_domains)}\n"
    )


def build(x_domains, y_domains, strict: bool, value_range: ValueRange | None = None):
    """Fresh store holding one variable per domain and the constraint over them.

    Returns ``(store, constraint, xs, ys)``.
    """
    if value_range is None:
        values = [v for d in list(x_domains) + list(y_domains) for v in d]
        value_range = ValueRange(min(values), max(values)) if values else ValueRange(0, 0)
    store = DomainStore(value_range.lo, value_range.hi)
    xs = [store.new_var(d) for d in x_domains]
    ys = [store.new_var(d) for d in y_domains]
    return store, MsetOrderingConstraint(store, xs, ys, strict), xs, ys


def format_domain(values: Sequence[int]) -> str:
    return "{" + ",".join(map(str, values)) + "}"

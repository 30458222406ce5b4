"""Differential oracle checks and propagation timing."""
from __future__ import annotations

import gc
import random
import statistics
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from .instances import InstanceFile, build, format_instance
from .mset import ValueRange
from .oracle import OracleInstance, oracle_gac
from .propagators import MsetOrderingConstraint, PropagationOutcome, propagate_msetord
from .store import DomainStore

Propagate = Callable[[DomainStore, MsetOrderingConstraint], PropagationOutcome]


def random_subset(rng: random.Random, width: int) -> frozenset:
    while True:
        dom = frozenset(v for v in range(width) if rng.random() < 0.5)
        if dom:
            return dom


def random_oracle_instance(rng: random.Random, max_n: int, max_width: int,
                           strict: Optional[bool] = None) -> OracleInstance:
    width = rng.randint(1, max_width)
    n = rng.randint(0, max_n)
    m = rng.randint(0, max_n)
    if strict is None:
        strict = rng.random() < 0.5
    return OracleInstance(
        tuple(random_subset(rng, width) for _ in range(n)),
        tuple(random_subset(rng, width) for _ in range(m)),
        strict,
    )


def propagated_domains(inst: OracleInstance, propagate: Propagate = propagate_msetord):
    """Run ``propagate`` once on a fresh store: ``(outcome, x_domains, y_domains)``."""
    store, c, xs, ys = build(inst.x_domains, inst.y_domains, inst.strict)
    outcome = propagate(store, c)
    if outcome is PropagationOutcome.FAILURE:
        return outcome, None, None
    return (outcome,
            tuple(frozenset(store.values(v)) for v in xs),
            tuple(frozenset(store.values(v)) for v in ys))


def mismatch(inst: OracleInstance, propagate: Propagate = propagate_msetord) -> Optional[str]:
    """Describe how ``propagate`` disagrees with the enumeration oracle, or ``None``."""
    expected = oracle_gac(inst)
    outcome, got_x, got_y = propagated_domains(inst, propagate)
    if expected is None:
        if outcome is PropagationOutcome.FAILURE:
            return None
        return f"oracle: FAILURE, propagator: {outcome.name} x={_fmt(got_x)} y={_fmt(got_y)}"
    if outcome is PropagationOutcome.FAILURE:
        return f"oracle: x={_fmt(expected[0])} y={_fmt(expected[1])}, propagator: FAILURE"
    if (got_x, got_y) != expected:
        return (f"oracle: x={_fmt(expected[0])} y={_fmt(expected[1])}, "
                f"propagator: x={_fmt(got_x)} y={_fmt(got_y)}")
    return None


def _fmt(domains) -> str:
    return "[" + " ".join("{" + ",".join(map(str, sorted(d))) + "}" for d in domains) + "]"


def dump(inst: OracleInstance) -> str:
    values = [v for d in inst.x_domains + inst.y_domains for v in d] or [0]
    return format_instance(InstanceFile(
        ValueRange(min(values), max(values)),
        tuple(tuple(sorted(d)) for d in inst.x_domains),
        tuple(tuple(sorted(d)) for d in inst.y_domains),
        inst.strict,
    ))


@dataclass
class OracleReport:
    seed: int
    trials: int
    mismatches: int = 0
    first: Optional[tuple[int, OracleInstance, str]] = field(default=None, repr=False)

    @property
    def ok(self) -> bool:
        return self.mismatches == 0


def run_oracle_check(seed: int, trials: int, max_n: int, max_width: int,
                     propagate: Propagate = propagate_msetord) -> OracleReport:
    rng = random.Random(seed)
    report = OracleReport(seed, trials)
    for trial in range(trials):
        inst = random_oracle_instance(rng, max_n, max_width)
        problem = mismatch(inst, propagate)
        if problem is not None:
            report.mismatches += 1
            if report.first is None:
                report.first = (trial, inst, problem)
    return report


def perf_instance(n: int, d: int, seed: int):
    """Unbound instance with ``n`` variables per side over ``0..d-1`` that forces real pruning.

    x floors mirror y ceilings value for value, and one y ceiling is then
    raised by one, so the constraint holds with very little slack and a
    large share of the x variables lose the top of their domains.
    """
    rng = random.Random(seed)
    store = DomainStore(0, d - 1)
    spread = max(1, d // 4)
    anchors = [rng.randrange(max(1, d - 1)) for _ in range(n)]
    xs = [store.new_interval_var(a, min(d - 1, a + rng.randint(1, spread))) for a in anchors]
    bump = rng.randrange(n)
    ys = [store.new_interval_var(max(0, a - rng.randint(1, spread)), a + (i == bump))
          for i, a in enumerate(anchors)]
    return store, MsetOrderingConstraint(store, xs, ys)


def time_propagation(n: int, d: int, seed: int = 0, repeats: int = 9,
                     propagate: Propagate = propagate_msetord) -> int:
    """Median wall time of one propagation call on :func:`perf_instance`, in nanoseconds.

    One untimed warm-up call comes first.  The cyclic garbage collector is
    paused while timing, as :mod:`timeit` does.
    """
    store, c = perf_instance(n, d, seed)
    token = store.mark()
    propagate(store, c)
    store.undo_to(token)
    samples = []
    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        for _ in range(repeats):
            token = store.mark()
            started = time.perf_counter_ns()
            outcome = propagate(store, c)
            samples.append(time.perf_counter_ns() - started)
            store.undo_to(token)
            if outcome is PropagationOutcome.FAILURE:
                raise AssertionError("perf instance unexpectedly failed")
    finally:
        if gc_was_enabled:
            gc.enable()
    return int(statistics.median(samples))

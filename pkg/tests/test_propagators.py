import itertools
import random

import pytest

from msetord.errors import ModelError
from msetord.harness import mismatch, propagated_domains, random_oracle_instance
from msetord.instances import build
from msetord.mset import ValueRange, mset_from_values
from msetord.oracle import OracleInstance, oracle_compare
from msetord.propagators import (
    LexLeq,
    MsetOrderingConstraint,
    PropagationOutcome,
    ceilings,
    check_disentailed,
    check_entailed,
    floors,
    propagate_lex_leq,
    propagate_msetord,
    propagate_sum_eq,
    propagate_sum_geq,
)
from msetord.store import DomainStore

FIX, FAIL, ENT = PropagationOutcome.FIXPOINT, PropagationOutcome.FAILURE, PropagationOutcome.ENTAILED


def domains(store, vars):
    return [set(store.values(v)) for v in vars]


def brute_force_gac(store, vars, predicate):
    """Supported values per variable (``vars`` distinct), or None if unsatisfiable."""
    doms = [store.values(v) for v in vars]
    keep = [set() for _ in vars]
    found = False
    for t in itertools.product(*doms):
        if predicate(dict(zip(vars, t))):
            found = True
            for i, value in enumerate(t):
                keep[i].add(value)
    return keep if found else None


def test_floors_and_ceilings():
    s = DomainStore(0, 5)
    a, b = s.new_var({1, 2, 3}), s.new_var({2, 3})
    r = ValueRange(0, 5)
    assert floors(s, [a, b]) == mset_from_values([1, 2], r)
    assert ceilings(s, [a, b]) == mset_from_values([3, 3], r)
    assert floors(s, []).cardinality == 0
    c, d = s.new_var({5}), s.new_var({5})
    assert floors(s, [c, d]) == ceilings(s, [c, d]) == mset_from_values([5, 5], r)


@pytest.mark.parametrize("x, y, strict, expected", [
    ([{3}], [{2}], False, True),
    ([{1, 2}, {1, 3}], [{0, 2}, {1, 2}], False, False),
    ([{1}], [{1}], True, True),
])
def test_check_disentailed_examples(x, y, strict, expected):
    store, c, _, _ = build(x, y, strict)
    assert check_disentailed(store, c) is expected


@pytest.mark.parametrize("x, y, strict, expected", [
    ([{0, 1}, {0, 1}], [{5}], False, True),
    ([{1, 2}], [{1, 2}], False, False),
    ([{2}], [{2}], False, True),
])
def test_check_entailed_examples(x, y, strict, expected):
    store, c, _, _ = build(x, y, strict)
    assert check_entailed(store, c) is expected


def test_propagate_prunes_x_tops():
    store, c, xs, ys = build([{1, 2, 3}, {1, 2, 3}], [{2}, {2}], False)
    assert propagate_msetord(store, c) is not FAIL
    assert domains(store, xs) == [{1, 2}, {1, 2}]
    assert domains(store, ys) == [{2}, {2}]


def test_propagate_prunes_y_bottom():
    store, c, xs, ys = build([{2}, {2}], [{1, 2, 3}], False)
    assert propagate_msetord(store, c) is not FAIL
    assert domains(store, ys) == [{3}]


def test_propagate_equal_bound():
    store, c, _, _ = build([{1}], [{1}], False)
    before = store.snapshot()
    assert propagate_msetord(store, c) is ENT
    assert store.snapshot() == before
    store, c, _, _ = build([{1}], [{1}], True)
    assert propagate_msetord(store, c) is FAIL


def test_shared_variable_rejected():
    s = DomainStore(0, 3)
    v = s.new_var({0, 1})
    with pytest.raises(ModelError):
        MsetOrderingConstraint(s, [v], [v])
    with pytest.raises(ModelError):
        MsetOrderingConstraint(s, [v], [7])


def test_repeated_variable_within_a_side_is_gac():
    rng = random.Random(11)
    for _ in range(1500):
        s = DomainStore(0, 3)
        pool = [s.new_var(rng.sample(range(4), rng.randint(1, 4))) for _ in range(4)]
        xs = [rng.choice(pool[:2]) for _ in range(rng.randint(0, 3))]
        ys = [rng.choice(pool[2:]) for _ in range(rng.randint(0, 3))]
        strict = rng.random() < 0.5
        c = MsetOrderingConstraint(s, xs, ys, strict)
        scope = list(c.scope)

        def holds(a):
            o = oracle_compare([a[v] for v in xs], [a[v] for v in ys]).value
            return o < 0 if strict else o <= 0

        if not scope:
            continue
        expected = brute_force_gac(s, scope, holds)
        outcome = propagate_msetord(s, c)
        if expected is None:
            assert outcome is FAIL
        else:
            assert outcome is not FAIL
            assert domains(s, scope) == expected


def test_random_instances_match_oracle():
    rng = random.Random(2024)
    for _ in range(3000):
        inst = random_oracle_instance(rng, 4, 5)
        assert mismatch(inst) is None, inst


def test_idempotent_and_contracting():
    rng = random.Random(77)
    for _ in range(2000):
        inst = random_oracle_instance(rng, 4, 5)
        store, c, xs, ys = build(inst.x_domains, inst.y_domains, inst.strict)
        original = [frozenset(d) for d in inst.x_domains + inst.y_domains]
        if propagate_msetord(store, c) is FAIL:
            continue
        after = store.snapshot()
        assert propagate_msetord(store, c) is not FAIL
        assert store.snapshot() == after
        for v, d in zip(xs + ys, original):
            assert set(store.values(v)) <= d


def test_no_solution_lost():
    rng = random.Random(5)
    for _ in range(1000):
        inst = random_oracle_instance(rng, 3, 4)
        outcome, px, py = propagated_domains(inst)
        for tx in itertools.product(*inst.x_domains):
            for ty in itertools.product(*inst.y_domains):
                o = oracle_compare(tx, ty).value
                if (o < 0) if inst.strict else (o <= 0):
                    assert outcome is not FAIL
                    assert all(v in d for v, d in zip(tx, px))
                    assert all(w in d for w, d in zip(ty, py))


def test_entailed_means_every_tuple_satisfies():
    rng = random.Random(6)
    seen = 0
    for _ in range(3000):
        inst = random_oracle_instance(rng, 3, 4)
        outcome, px, py = propagated_domains(inst)
        if outcome is not ENT:
            continue
        seen += 1
        for tx in itertools.product(*px):
            for ty in itertools.product(*py):
                o = oracle_compare(tx, ty).value
                assert (o < 0) if inst.strict else (o <= 0)
    assert seen > 50


def test_empty_sides():
    assert propagated_domains(OracleInstance.of([], []))[0] is ENT
    assert propagated_domains(OracleInstance.of([], [], strict=True))[0] is FAIL
    assert propagated_domains(OracleInstance.of([{1, 2}], []))[0] is FAIL
    outcome, _, py = propagated_domains(OracleInstance.of([], [{0, 1}], strict=True))
    assert outcome is ENT and py == (frozenset({0, 1}),)


# -- side constraints ---------------------------------------------------------

def test_sum_eq_examples():
    s = DomainStore(0, 1)
    vs = [s.new_var({0, 1}) for _ in range(3)]
    assert propagate_sum_eq(s, vs, 3) is ENT
    assert all(s.min(v) == 1 for v in vs)
    s = DomainStore(0, 1)
    vs = [s.new_var({0, 1}) for _ in range(2)]
    assert propagate_sum_eq(s, vs, 1) is FIX
    assert domains(s, vs) == [{0, 1}, {0, 1}]
    assert propagate_sum_eq(s, vs, 3) is FAIL


def test_sum_bounds_are_supported_on_intervals():
    rng = random.Random(8)
    for _ in range(1500):
        s = DomainStore(0, 5)
        vs = [s.new_interval_var(*sorted(rng.randint(0, 5) for _ in range(2)))
              for _ in range(rng.randint(1, 4))]
        total = rng.randint(0, 12)
        weights = [rng.randint(0, 3) for _ in vs]
        if rng.random() < 0.5:
            expected = brute_force_gac(s, vs, lambda a: sum(a[v] for v in vs) == total)
            outcome = propagate_sum_eq(s, vs, total)
        else:
            expected = brute_force_gac(
                s, vs, lambda a: sum(w * a[v] for w, v in zip(weights, vs)) >= total)
            outcome = propagate_sum_geq(s, weights, vs, total)
        if expected is None:
            assert outcome is FAIL
            continue
        assert outcome is not FAIL
        for v, keep in zip(vs, expected):
            assert s.min(v) == min(keep) and s.max(v) == max(keep)


def test_lex_example():
    s = DomainStore(0, 2)
    x1, x2 = s.new_var({1}), s.new_var({0, 1, 2})
    y1, y2 = s.new_var({1}), s.new_var({1})
    assert propagate_lex_leq(s, [x1, x2], [y1, y2]) is ENT
    assert set(s.values(x2)) == {0, 1}


def test_lex_is_gac():
    rng = random.Random(13)
    for _ in range(3000):
        s = DomainStore(0, 3)
        n = rng.randint(1, 3)
        xs = [s.new_var(rng.sample(range(4), rng.randint(1, 4))) for _ in range(n)]
        ys = [s.new_var(rng.sample(range(4), rng.randint(1, 4))) for _ in range(n)]
        scope = xs + ys
        expected = brute_force_gac(s, scope, lambda a: [a[v] for v in xs] <= [a[v] for v in ys])
        outcome = LexLeq(s, xs, ys).propagate(s)
        if expected is None:
            assert outcome is FAIL
        else:
            assert outcome is not FAIL
            assert domains(s, scope) == expected


def test_lex_rejects_bad_vectors():
    s = DomainStore(0, 1)
    a, b, c = (s.new_var({0, 1}) for _ in range(3))
    with pytest.raises(ModelError):
        LexLeq(s, [a], [b, c])
    with pytest.raises(ModelError):
        LexLeq(s, [a, b], [b, c])

import random

import pytest

from msetord.errors import ModelError, RangeViolation, UsageError
from msetord.store import Change, DomainStore


@pytest.fixture
def store():
    return DomainStore(0, 9)


def dom(store, v):
    return set(store.values(v))


def test_new_var_examples(store):
    a = store.new_var({1, 2, 3})
    b = store.new_var({5})
    c = store.new_var({0, 2})
    assert (store.min(a), store.max(a), store.size(a)) == (1, 3, 3)
    assert store.min(b) == store.max(b) == 5 and store.is_bound(b)
    assert (store.min(c), store.max(c), store.size(c)) == (0, 2, 2)
    assert dom(store, c) == {0, 2}


def test_new_var_errors(store):
    with pytest.raises(ModelError):
        store.new_var([])
    with pytest.raises(RangeViolation):
        store.new_var([10])


@pytest.mark.parametrize("initial, bound, change, after", [
    ({1, 2, 3}, 2, Change.CHANGED, {1, 2}),
    ({1, 2}, 5, Change.UNCHANGED, {1, 2}),
    ({3}, 2, Change.FAILURE, {3}),
])
def test_prune_above(store, initial, bound, change, after):
    v = store.new_var(initial)
    assert store.prune_above(v, bound) is change
    assert dom(store, v) == after


@pytest.mark.parametrize("initial, bound, change, after", [
    ({1, 2, 3}, 3, Change.CHANGED, {3}),
    ({1, 2}, 0, Change.UNCHANGED, {1, 2}),
    ({1}, 2, Change.FAILURE, {1}),
])
def test_prune_below(store, initial, bound, change, after):
    v = store.new_var(initial)
    assert store.prune_below(v, bound) is change
    assert dom(store, v) == after


def test_prune_across_holes(store):
    v = store.new_var({1, 4, 7})
    assert store.prune_above(v, 6) is Change.CHANGED
    assert store.max(v) == 4
    assert store.prune_below(v, 2) is Change.CHANGED
    assert store.min(v) == 4 and store.is_bound(v)


def test_mark_undo_restores(store):
    x = store.new_var({1, 2, 3})
    before = store.snapshot()
    t = store.mark()
    store.prune_above(x, 1)
    store.undo_to(t)
    assert store.snapshot() == before
    assert (store.min(x), store.max(x), store.size(x)) == (1, 3, 3)


def test_undo_without_changes(store):
    store.new_var({1, 2})
    before = store.snapshot()
    store.undo_to(store.mark())
    assert store.snapshot() == before


def test_nested_marks_lifo(store):
    x = store.new_var(range(10))
    outer = store.mark()
    store.prune_above(x, 7)
    inner = store.mark()
    store.prune_above(x, 3)
    with pytest.raises(UsageError):
        store.undo_to(outer)
    store.undo_to(inner)
    assert store.max(x) == 7
    store.undo_to(outer)
    assert store.max(x) == 9
    with pytest.raises(UsageError):
        store.undo_to(outer)


def test_assign_and_remove(store):
    x = store.new_var({2, 3, 5})
    assert store.remove(x, 4) is Change.UNCHANGED
    assert store.remove(x, 2) is Change.CHANGED and store.min(x) == 3
    assert store.assign(x, 4) is Change.FAILURE
    assert store.assign(x, 5) is Change.CHANGED and store.is_bound(x)
    assert store.remove(x, 5) is Change.FAILURE


def test_batched_prunes_match_single(store):
    rng = random.Random(3)
    other = DomainStore(0, 9)
    for _ in range(20):
        values = rng.sample(range(10), rng.randint(1, 10))
        store.new_var(values)
        other.new_var(values)
    vars_ = list(range(20))
    bounds = [rng.randint(0, 9) for _ in vars_]
    store.prune_below_many([v for v, b in zip(vars_, bounds) if b <= other.max(v)],
                           [b for v, b in zip(vars_, bounds) if b <= other.max(v)])
    for v, b in zip(vars_, bounds):
        if b <= other.max(v):
            other.prune_below(v, b)
    assert store.snapshot() == other.snapshot()
    assert list(store.mins) == list(other.mins) and list(store.sizes) == list(other.sizes)


def _check_caches(store):
    for v in range(len(store)):
        values = store.values(v)
        assert values, "empty domain stored"
        assert store.min(v) == values[0]
        assert store.max(v) == values[-1]
        assert store.size(v) == len(values)


def test_random_scripts_against_shadow_copies():
    """Trail-based undo must agree with naive copy-on-mark restoration."""
    rng = random.Random(20240611)
    for _ in range(10_000):
        store = DomainStore(-2, 5)
        shadow = []
        for _ in range(rng.randint(1, 4)):
            values = set(rng.sample(range(-2, 6), rng.randint(1, 8)))
            store.new_var(values)
            shadow.append(values)
        saved = []
        for _ in range(rng.randint(1, 12)):
            op = rng.random()
            v = rng.randrange(len(shadow))
            b = rng.randint(-3, 6)
            if op < 0.2:
                saved.append((store.mark(), [set(d) for d in shadow]))
            elif op < 0.35 and saved:
                token, copy = saved.pop()
                store.undo_to(token)
                shadow = copy
            elif op < 0.55:
                kept = {x for x in shadow[v] if x <= b}
                res = store.prune_above(v, b)
                assert res is (Change.FAILURE if not kept else
                               Change.UNCHANGED if kept == shadow[v] else Change.CHANGED)
                if kept:
                    shadow[v] = kept
            elif op < 0.75:
                kept = {x for x in shadow[v] if x >= b}
                res = store.prune_below(v, b)
                assert res is (Change.FAILURE if not kept else
                               Change.UNCHANGED if kept == shadow[v] else Change.CHANGED)
                if kept:
                    shadow[v] = kept
            elif op < 0.9:
                kept = shadow[v] - {b}
                if store.remove(v, b) is not Change.FAILURE:
                    shadow[v] = kept
            else:
                if store.assign(v, b) is not Change.FAILURE:
                    shadow[v] = {b}
            assert [set(store.values(i)) for i in range(len(shadow))] == shadow
            _check_caches(store)
        while saved:
            token, copy = saved.pop()
            store.undo_to(token)
            assert [set(store.values(i)) for i in range(len(copy))] == copy

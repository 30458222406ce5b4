import random

from helpers import random_mixed_model

from msetord.engine import Model, propagate_to_fixpoint, solve_all, solve_first
from msetord.oracle import oracle_solutions
from msetord.propagators import PropagationOutcome


def test_fixpoint_single_msetord():
    m = Model(0, 3)
    xs = [m.var({1, 2, 3}) for _ in range(2)]
    ys = [m.var({2}) for _ in range(2)]
    m.msetord(xs, ys)
    assert propagate_to_fixpoint(m) is PropagationOutcome.FIXPOINT
    assert [m.store.values(v) for v in xs] == [[1, 2], [1, 2]]


def test_fixpoint_failure():
    m = Model(0, 3)
    m.msetord([m.var({3})], [m.var({2})])
    assert propagate_to_fixpoint(m) is PropagationOutcome.FAILURE


def test_fixpoint_without_constraints():
    m = Model(0, 3)
    m.var({0, 1})
    before = m.store.snapshot()
    assert propagate_to_fixpoint(m) is PropagationOutcome.FIXPOINT
    assert m.store.snapshot() == before


def test_solve_all_unconstrained_order():
    m = Model(0, 1)
    m.var({0, 1})
    m.var({0, 1})
    solutions, stats = solve_all(m)
    assert solutions == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert stats.solutions == 4


def test_solve_all_strict():
    m = Model(0, 1)
    x, y = m.var({0, 1}), m.var({0, 1})
    m.msetord([x], [y], strict=True)
    solutions, _ = solve_all(m)
    assert solutions == [(0, 1)]


def test_limit_and_first():
    m = Model(0, 2)
    for _ in range(3):
        m.var(range(3))
    solutions, stats = solve_all(m, limit=1)
    assert solutions == [(0, 0, 0)]
    first, stats1 = solve_first(m)
    assert first == (0, 0, 0)
    assert stats1.nodes == stats.nodes == 3
    none, _ = solve_first(_unsat())
    assert none is None


def _unsat():
    m = Model(0, 1)
    m.msetord([m.var({1})], [m.var({0, 1})], strict=True)
    return m


def test_solving_restores_the_model():
    m = Model(0, 2)
    a, b = m.var(range(3)), m.var(range(3))
    m.sum_eq([a, b], 2)
    before = m.store.snapshot()
    solve_all(m)
    assert m.store.snapshot() == before
    assert all(m.is_active(i) for i in range(len(m.constraints)))


def test_entailment_deactivation_is_undone():
    m = Model(0, 3)
    x, y = m.var({0, 1, 2}), m.var({1, 2, 3})
    m.msetord([x], [y])
    token = m.mark()
    m.store.assign(x, 0)
    assert propagate_to_fixpoint(m, everything=False) is PropagationOutcome.FIXPOINT
    assert not m.is_active(0)
    m.undo_to(token)
    assert m.is_active(0)


def test_stats_invariants_and_determinism():
    rng = random.Random(17)
    for _ in range(200):
        seed = rng.randrange(10**9)
        m1, _, _ = random_mixed_model(random.Random(seed))
        m2, _, _ = random_mixed_model(random.Random(seed))
        s1, st1 = solve_all(m1)
        s2, st2 = solve_all(m2)
        assert s1 == s2
        assert (st1.nodes, st1.failures, st1.propagations) == (st2.nodes, st2.failures, st2.propagations)
        assert st1.failures <= st1.nodes + 1
        assert st1.solutions == len(s1)


def test_matches_enumeration():
    rng = random.Random(3)
    for _ in range(300):
        model, domains, preds = random_mixed_model(rng)
        expected = oracle_solutions(domains, lambda t: all(p(t) for p in preds))
        assert solve_all(model)[0] == expected


def test_adding_msetord_chain_never_adds_solutions():
    rng = random.Random(23)
    for _ in range(200):
        seed = rng.randrange(10**9)
        base, _, _ = random_mixed_model(random.Random(seed))
        chained, _, _ = random_mixed_model(random.Random(seed))
        n = chained.num_vars
        if n < 2:
            continue
        half = n // 2
        chained.msetord(list(range(half)), list(range(half, n)))
        assert set(solve_all(chained)[0]) <= set(solve_all(base)[0])

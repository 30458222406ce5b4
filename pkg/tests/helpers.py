"""Random model generation shared by the engine and acceptance tests."""
import random

from msetord.engine import Model
from msetord.oracle import oracle_compare


def random_mixed_model(rng: random.Random, max_vars: int = 6, max_width: int = 4):
    """A small model mixing msetord, sums and lex.

    Returns ``(model, domains, predicates)``; ``predicates`` test a full
    assignment tuple and say nothing about how the model propagates.
    """
    width = rng.randint(1, max_width)
    nvars = rng.randint(1, max_vars)
    model = Model(0, width - 1)
    domains = []
    for _ in range(nvars):
        dom = rng.sample(range(width), rng.randint(1, width))
        model.var(dom)
        domains.append(dom)
    preds = []
    for _ in range(rng.randint(0, 3)):
        kind = rng.choice(["msetord", "sum_eq", "sum_geq", "lex"])
        order = list(range(nvars))
        rng.shuffle(order)
        if kind == "msetord":
            cut = rng.randint(0, nvars)
            xs = [rng.choice(order[:cut]) for _ in range(rng.randint(0, 3))] if cut else []
            ys = [rng.choice(order[cut:]) for _ in range(rng.randint(0, 3))] if cut < nvars else []
            strict = rng.random() < 0.3
            model.msetord(xs, ys, strict)
            preds.append(lambda t, xs=xs, ys=ys, strict=strict: (
                oracle_compare([t[v] for v in xs], [t[v] for v in ys]).value < (1 if not strict else 0)))
        elif kind == "sum_eq":
            vs = order[:rng.randint(1, nvars)]
            total = rng.randint(0, len(vs) * (width - 1))
            model.sum_eq(vs, total)
            preds.append(lambda t, vs=vs, total=total: sum(t[v] for v in vs) == total)
        elif kind == "sum_geq":
            vs = order[:rng.randint(1, nvars)]
            ws = [rng.randint(0, 2) for _ in vs]
            bound = rng.randint(0, sum(ws) * (width - 1))
            model.sum_geq(ws, vs, bound)
            preds.append(lambda t, vs=vs, ws=ws, bound=bound:
                         sum(w * t[v] for w, v in zip(ws, vs)) >= bound)
        elif nvars >= 2:
            half = rng.randint(1, nvars // 2)
            xs, ys = order[:half], order[half:2 * half]
            model.lex_leq(xs, ys)
            preds.append(lambda t, xs=xs, ys=ys: [t[v] for v in xs] <= [t[v] for v in ys])
    return model, domains, preds

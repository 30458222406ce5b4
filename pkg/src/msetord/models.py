"""Benchmark model generators and the CSV benchmark runner.

Both families have interchangeable row vectors; the symmetry scheme decides
what, if anything, is posted between adjacent rows:

``none``     nothing
``msetord``  row[i] <=m row[i+1]
``lex``      row[i] <=lex row[i+1]
"""
from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .engine import Model, solve_all
from .errors import ModelError

SCHEMES = ("none", "msetord", "lex")
CSV_HEADER = ("model", "scheme", "params", "solutions", "nodes", "failures", "propagations", "millis")

# desk-scale caps on the generator parameters
MAX_CELLS = 64
MAX_VALUE = 32


def _post_chain(model: Model, rows: Sequence[Sequence[int]], scheme: str) -> None:
    if scheme not in SCHEMES:
        raise ModelError(f"unknown symmetry scheme {scheme!r}")
    for a, b in zip(rows, rows[1:]):
        if scheme == "msetord":
            model.msetord(a, b)
        elif scheme == "lex":
            model.lex_leq(a, b)


def symmetric_matrix(k: int, n: int, d: int, s: int, scheme: str = "none"):
    """``k`` interchangeable rows of ``n`` variables over ``0..d``, each row summing to ``s``.

    Returns ``(model, rows)``.
    """
    if min(k, n) < 1 or d < 0 or s < 0:
        raise ModelError("symmetric-matrix needs k, n >= 1 and d, s >= 0")
    if k * n > MAX_CELLS or d > MAX_VALUE:
        raise ModelError(f"symmetric-matrix capped at {MAX_CELLS} cells and d <= {MAX_VALUE}")
    model = Model(0, d)
    rows = [[model.interval_var(0, d) for _ in range(n)] for _ in range(k)]
    for row in rows:
        model.sum_eq(row, s)
    _post_chain(model, rows, scheme)
    return model, rows


def template_design(templates: int, variations: int, slots: int, runs: int,
                    demands: Sequence[int], scheme: str = "none"):
    """Decision variant of template design with a fixed run count per template.

    ``a[i][j]`` is the number of slots given to variation ``i`` on template
    ``j``.  Every template is filled exactly (column sum ``slots``) and every
    variation meets its demand: ``runs * sum_j a[i][j] >= demands[i]``.
    Templates are interchangeable, so the chain runs over template columns.
    Returns ``(model, columns)``.
    """
    if min(templates, variations, slots, runs) < 1:
        raise ModelError("template-design parameters must be positive")
    if len(demands) != variations:
        raise ModelError(f"{variations} variations need {variations} demands, got {len(demands)}")
    if templates * variations > MAX_CELLS or slots > MAX_VALUE:
        raise ModelError(f"template-design capped at {MAX_CELLS} cells and {MAX_VALUE} slots")
    model = Model(0, slots)
    a = [[model.interval_var(0, slots) for _ in range(templates)] for _ in range(variations)]
    columns = [[a[i][j] for i in range(variations)] for j in range(templates)]
    for col in columns:
        model.sum_eq(col, slots)
    for i in range(variations):
        model.sum_geq([runs] * templates, a[i], demands[i])
    _post_chain(model, columns, scheme)
    return model, columns


@dataclass
class BenchConfig:
    model: str
    params: dict
    schemes: tuple[str, ...] = SCHEMES
    limit: Optional[int] = None
    seed: int = 0
    out: Optional[str] = None

    def __post_init__(self):
        for scheme in self.schemes:
            if scheme not in SCHEMES:
                raise ModelError(f"unknown symmetry scheme {scheme!r}")
        if self.model not in GENERATORS:
            raise ModelError(f"unknown model family {self.model!r}")


def _template_params(params: dict, seed: int) -> dict:
    params = dict(params)
    if params.get("demands") is None:
        # demands must stay satisfiable: total capacity is runs * templates * slots
        rng = random.Random(seed)
        cap = params["runs"] * params["templates"] * params["slots"] // params["variations"]
        params["demands"] = [rng.randint(1, max(1, cap)) for _ in range(params["variations"])]
    return params


def _format_params(params: dict) -> str:
    parts = []
    for key, value in params.items():
        if isinstance(value, (list, tuple)):
            value = "/".join(map(str, value))
        parts.append(f"{key}={value}")
    return ";".join(parts)


GENERATORS = {
    "symmetric-matrix": lambda p, scheme: symmetric_matrix(p["k"], p["n"], p["d"], p["s"], scheme),
    "template-design": lambda p, scheme: template_design(
        p["templates"], p["variations"], p["slots"], p["runs"], p["demands"], scheme),
}


def run_bench(config: BenchConfig) -> list[dict]:
    params = config.params
    if config.model == "template-design":
        params = _template_params(params, config.seed)
    rows = []
    for scheme in config.schemes:
        model, _ = GENERATORS[config.model](params, scheme)
        _, stats = solve_all(model, config.limit)
        rows.append({
            "model": config.model,
            "scheme": scheme,
            "params": _format_params(params),
            "solutions": stats.solutions,
            "nodes": stats.nodes,
            "failures": stats.failures,
            "propagations": stats.propagations,
            "millis": f"{stats.elapsed * 1000:.3f}",
        })
    return rows


def rows_to_csv(rows: list[dict], header: Sequence[str] = CSV_HEADER) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(header), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()

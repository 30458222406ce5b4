"""Command-line entry point.

Exit codes: 0 success, 1 semantic failure (FAILURE or oracle mismatch),
2 usage or parse error.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

from . import kernel
from .errors import ModelError, ParseError
from .fuzzy import best_assignments, format_profile, parse_problem
from .harness import dump, run_oracle_check, time_propagation
from .instances import build, format_domain, parse_instance
from .models import SCHEMES, BenchConfig, rows_to_csv, run_bench
from .mset import ValueRange, mset_compare, mset_from_values
from .propagators import PropagationOutcome, check_entailed, propagate_msetord

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


class UsageFailure(Exception):
    pass


def _values(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise ParseError(f"not a multiset literal: {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageFailure(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_compare(args) -> int:
    if args.file:
        lines = [ln for ln in _read(args.file).splitlines() if not ln.lstrip().startswith("#")]
        if len(lines) != 2:
            raise ParseError("a comparison file holds exactly two multiset lines")
        left, right = lines
    else:
        if args.left is None or args.right is None:
            raise UsageFailure("compare needs two multisets or --file")
        left, right = args.left, args.right
    a, b = _values(left), _values(right)
    both = a + b or [0]
    r = ValueRange(min(both), max(both))
    print(mset_compare(mset_from_values(a, r), mset_from_values(b, r)).name)
    return EXIT_OK


def cmd_propagate(args) -> int:
    inst = parse_instance(_read(args.instance))
    strict = inst.strict or args.strict
    store, c, xs, ys = build(inst.x_domains, inst.y_domains, strict, inst.range)
    entailed_on_input = check_entailed(store, c)
    outcome = propagate_msetord(store, c)
    if outcome is PropagationOutcome.FAILURE:
        print("FAILURE")
        return EXIT_FAILURE
    if entailed_on_input:
        print("ENTAILED")
    for prefix, vars in (("x", xs), ("y", ys)):
        for i, v in enumerate(vars, 1):
            print(f"{prefix}{i}: {format_domain(store.values(v))}")
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    report = run_oracle_check(args.seed, args.trials, args.max_n, args.max_width)
    print(f"{report.trials} trials, {report.mismatches} mismatches")
    if report.ok:
        return EXIT_OK
    trial, inst, problem = report.first
    print(f"first mismatch: seed {report.seed}, trial {trial}: {problem}")
    sys.stdout.write(dump(inst))
    return EXIT_FAILURE


def cmd_bench(args) -> int:
    if args.model == "symmetric-matrix":
        params = {"k": args.k, "n": args.n, "d": args.d, "s": args.s}
    else:
        params = {"templates": args.templates, "variations": args.variations,
                  "slots": args.slots, "runs": args.runs, "demands": args.demands}
    schemes = tuple(s.strip() for s in args.scheme.split(",") if s.strip())
    config = BenchConfig(args.model, params, schemes, args.limit, args.seed, args.out)
    _emit(rows_to_csv(run_bench(config)), config.out)
    return EXIT_OK


def cmd_perf(args) -> int:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "d", "nanos_per_call"])
    for n in args.n:
        for d in args.d:
            if n < 1 or d < 2:
                raise UsageFailure("perf needs n >= 1 and d >= 2")
            writer.writerow([n, d, time_propagation(n, d, args.seed, args.repeats)])
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_fuzzy(args) -> int:
    problem = parse_problem(_read(args.problem))
    profile, winners = best_assignments(problem)
    print(f"best profile {format_profile(profile)}: {len(winners)} assignment(s)")
    for assignment in winners:
        print(" ".join(f"{k}={v}" for k, v in assignment.items()))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="msetord", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s (kernel: {kernel.BACKEND})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compare", help="order two multisets: LESS, EQUAL or GREATER")
    p.add_argument("left", nargs="?", help='space-separated values, e.g. "1 1 2"')
    p.add_argument("right", nargs="?")
    p.add_argument("--file", help="file with the two multisets on two lines")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("propagate", help="run the GAC propagator on an instance file")
    p.add_argument("instance")
    p.add_argument("--strict", action="store_true", help="force the strict ordering")
    p.set_defaults(func=cmd_propagate)

    p = sub.add_parser("oracle-check", help="differential test against brute-force enumeration")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--max-width", type=int, default=5)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("bench", help="count solutions of a benchmark model under symmetry schemes")
    p.add_argument("model", choices=["symmetric-matrix", "template-design"])
    p.add_argument("--scheme", default=",".join(SCHEMES),
                   help="comma-separated subset of none,msetord,lex")
    p.add_argument("--limit", type=int, help="stop after this many solutions")
    p.add_argument("--seed", type=int, default=0, help="seeds random demands for template-design")
    p.add_argument("--out", help="write the CSV here instead of stdout")
    g = p.add_argument_group("symmetric-matrix")
    g.add_argument("--k", type=int, default=3, help="rows")
    g.add_argument("--n", type=int, default=2, help="row length")
    g.add_argument("--d", type=int, default=2, help="largest value")
    g.add_argument("--s", type=int, default=2, help="row sum")
    g = p.add_argument_group("template-design")
    g.add_argument("--templates", type=int, default=2)
    g.add_argument("--variations", type=int, default=2)
    g.add_argument("--slots", type=int, default=2)
    g.add_argument("--runs", type=int, default=2)
    g.add_argument("--demands", type=_int_list, help="comma-separated, one per variation")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("perf", help="time one propagation call on random instances")
    p.add_argument("--n", type=_int_list, default=[100_000, 200_000])
    p.add_argument("--d", type=_int_list, default=[100])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeats", type=int, default=9)
    p.add_argument("--out")
    p.set_defaults(func=cmd_perf)

    p = sub.add_parser("fuzzy", help="rank soft-CSP assignments by their cost multiset")
    p.add_argument("problem")
    p.set_defaults(func=cmd_fuzzy)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ModelError, UsageFailure) as exc:
        print(f"msetord {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

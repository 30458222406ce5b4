"""Compare the compiled and pure-Python filtering kernels.

    python benchmarks/bench_kernel.py [--n 10000,100000] [--d 100,10000] [--repeats 7]

Times ``msetord_filter`` alone (no domain pruning) on the instances used by
``msetord perf`` and prints one CSV row per backend and size.
"""
import argparse
import statistics
import sys
import time

from msetord.harness import perf_instance
from msetord.kernel import backends


def time_kernel(mod, store, c, repeats):
    r = c.range
    args = (store.mins, store.maxs, c._xvars, c._xmult, c._yvars, c._ymult, r.lo, r.width, c.strict)
    mod.msetord_filter(*args)
    samples = []
    for _ in range(repeats):
        t0 = time.perf_counter_ns()
        mod.msetord_filter(*args)
        samples.append(time.perf_counter_ns() - t0)
    return statistics.median(samples)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", default="10000,100000")
    parser.add_argument("--d", default="100,10000")
    parser.add_argument("--repeats", type=int, default=7)
    args = parser.parse_args(argv)
    found = backends()
    if "cython" not in found:
        print("compiled kernel not built; only the Python backend is available", file=sys.stderr)
    print("n,d,backend,nanos_per_call,speedup_vs_python")
    for n in map(int, args.n.split(",")):
        for d in map(int, args.d.split(",")):
            store, c = perf_instance(n, d, seed=0)
            timings = {name: time_kernel(mod, store, c, args.repeats) for name, mod in found.items()}
            for name, nanos in timings.items():
                print(f"{n},{d},{name},{int(nanos)},{timings['python'] / nanos:.1f}")


if __name__ == "__main__":
    main()

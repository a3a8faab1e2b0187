"""Compare the compiled and pure-Python label kernels on level counting.

    python3 benchmarks/bench_kernel.py [--dim 3] [--max-n 7] [--repeat 3]
"""
import argparse
import time

from dfloorplan import _kernel_py
from dfloorplan.gentree import root_label

try:
    from dfloorplan import _labelkernel
except ImportError:
    _labelkernel = None


def run(expand, dim, max_n):
    frontier = {root_label(dim).key: 1}
    for _ in range(max_n - 1):
        frontier = expand(frontier, dim)
    return sum(frontier.values()), len(frontier)


def best_of(repeat, fn, *args):
    best, result = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dim", type=int, default=3)
    ap.add_argument("--max-n", type=int, default=7)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = [("python", _kernel_py.expand_frontier)]
    if _labelkernel is not None:
        backends.append(("cython", _labelkernel.expand_frontier))
    else:
        print("compiled kernel not available; timing the fallback only")

    timings = {}
    for name, expand in backends:
        secs, (count, labels) = best_of(args.repeat, run, expand, args.dim, args.max_n)
        timings[name] = secs
        print(f"{name:7s} d={args.dim} n={args.max_n}: {count} floorplans, "
              f"{labels} labels, {secs:.3f}s")
    if len(timings) == 2:
        print(f"speedup {timings['python'] / timings['cython']:.1f}x")


if __name__ == "__main__":
    main()

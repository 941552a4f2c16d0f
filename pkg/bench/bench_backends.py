#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Runs the same searches/checks through both backends and prints wall times
and speedups. Usage: python bench/bench_backends.py [--repeat N]
"""

import argparse
import time

import numpy as np

from zswc import kernels
from zswc.modcore import nonzero_squares, unit_squares, units
from zswc.search import canonical_first_values


def timed(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_search(n, kind, repeat):
    weights = nonzero_squares(n).values()
    first = canonical_first_values(n)
    rows = {}
    for backend in ("numba", "numpy"):
        tables = kernels.prepare(n, weights, backend=backend)
        took, out = timed(
            lambda: kernels.run_search(tables, kind, first, (), n), repeat
        )
        rows[backend] = (took, out)
    a, b = rows["numba"], rows["numpy"]
    assert (a[1].best_depth, a[1].nodes) == (b[1].best_depth, b[1].nodes)
    return f"{kind} search n={n} ({a[1].nodes} nodes)", a[0], b[0]


def bench_coverage(p, r, repeat):
    n = p**r
    sq = unit_squares(n).values()
    us = units(n).values()
    rows = {}
    for backend in ("numba", "numpy"):
        took, out = timed(
            lambda: kernels.coverage_violation(n, sq, us, 3, True, backend=backend),
            repeat,
        )
        rows[backend] = (took, out)
    assert rows["numba"][1] == rows["numpy"][1]
    return f"coverage p={p} r={r} ({len(us)}^2 tuples)", rows["numba"][0], rows["numpy"][0]


def bench_batch(repeat):
    n = 25
    weights = unit_squares(n).values()
    rng = np.random.default_rng(0)
    seqs = rng.integers(0, n, size=(2000, 9))
    rows = {}
    for backend in ("numba", "numpy"):
        tables = kernels.prepare(n, weights, backend=backend)
        took, out = timed(
            lambda: kernels.consecutive_blocking_batch(tables, seqs), repeat
        )
        rows[backend] = (took, out)
    assert (rows["numba"][1] == rows["numpy"][1]).all()
    return "window batch 2000x9 over Z_25", rows["numba"][0], rows["numpy"][0]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    # warm the JIT cache so compile time is not measured
    warm = kernels.prepare(9, nonzero_squares(9).values(), backend="numba")
    kernels.run_search(warm, "davenport", canonical_first_values(9), (), 9)
    kernels.run_search(warm, "consecutive", canonical_first_values(9), (), 9)
    kernels.coverage_violation(9, unit_squares(9).values(), units(9).values(),
                               3, True, backend="numba")
    kernels.consecutive_blocking_batch(warm, np.ones((2, 9), dtype=np.int64))

    cases = [
        bench_search(49, "davenport", args.repeat),
        bench_search(9, "consecutive", args.repeat),
        bench_search(16, "consecutive", args.repeat),
        bench_coverage(7, 2, args.repeat),
        bench_batch(args.repeat),
    ]
    width = max(len(label) for label, _, _ in cases)
    print(f"{'case'.ljust(width)}   numba      numpy      speedup")
    for label, tn, tp in cases:
        print(f"{label.ljust(width)}   {tn * 1e3:8.2f}ms {tp * 1e3:8.2f}ms {tp / tn:8.1f}x")


if __name__ == "__main__":
    main()

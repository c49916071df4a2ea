#!/usr/bin/env python3
"""Benchmark the subset-BFS oracle kernels: compiled extension vs the
pure-Python fallback.

The BFS frontier is the whole reachable subset lattice (up to 2^n masks), so
this is the hot loop of the package.  Usage:

    python benchmarks/bench_subset_bfs.py [--max-n 20]
"""
import argparse
import time

from syncword import gen_cerny, gen_random_partial
from syncword.oracle import _bfs_c, subset_bfs


def bench(dfa, backend, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        report = subset_bfs(dfa, backend=backend)
        best = min(best, time.perf_counter() - start)
    return best, report


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-n", type=int, default=20)
    args = parser.parse_args()

    cases = []
    for n in (12, 14, 16, 18, 20, 22):
        if n > args.max_n:
            break
        cases.append((f"cycle family n={n}", gen_cerny(n)))
        cases.append((f"random partial n={n} d=0.9",
                      gen_random_partial(n, 2, 0.9, 1)))

    backends = ["python"] + (["c"] if _bfs_c is not None else [])
    if _bfs_c is None:
        print("note: compiled kernel not built; benchmarking fallback only")

    header = f"{'case':32} " + " ".join(f"{b:>10}" for b in backends)
    print(header + ("    speedup" if len(backends) == 2 else ""))
    print("-" * len(header))
    for name, dfa in cases:
        times = {}
        reports = {}
        for b in backends:
            times[b], reports[b] = bench(dfa, b)
        if len(backends) == 2:
            assert reports["python"] == reports["c"], "kernels disagree"
            ratio = times["python"] / times["c"]
            cols = " ".join(f"{times[b]:>9.3f}s" for b in backends)
            print(f"{name:32} {cols}    {ratio:6.1f}x")
        else:
            print(f"{name:32} {times['python']:>9.3f}s")


if __name__ == "__main__":
    main()

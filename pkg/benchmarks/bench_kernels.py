"""Time the numba kernels against the pure-numpy fallback.

    python3 benchmarks/bench_kernels.py [--sizes 50,200,800] [--repeat 5]

Each size is a random bidirected graph with that many vertices and three
times as many edges.  JIT compilation is warmed up before timing.
"""
from __future__ import annotations

import argparse
import random
import timeit

import numpy as np

from bidigraph import BidirectedGraph, StateDigraph, kernels
from bidigraph._accel import HAVE_NUMBA


def make_graph(n: int, m: int, seed: int) -> BidirectedGraph:
    rng = random.Random(seed)
    edges = []
    for j in range(m):
        u, v = rng.randrange(n), rng.randrange(n)
        edges.append((f"e{j}", u, rng.choice((1, -1)), v, rng.choice((1, -1))))
    return BidirectedGraph(range(n), edges)


def bench(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="50,200,800")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = ["numba", "numpy"] if HAVE_NUMBA else ["numpy"]
    if not HAVE_NUMBA:
        print("numba not installed; timing numpy only")

    warm = StateDigraph(make_graph(5, 10, 0))
    for b in backends:
        a = (warm.indptr, warm.order, warm.heads, warm.arc_edge, warm.alive_mask())
        kernels.reach_all(*a, backend=b)
        kernels.reach_from(*a, 0, backend=b)
        kernels.bfs_tree(*a, 0, backend=b)

    print(f"{'vertices':>8} {'edges':>6} {'kernel':>10} " + " ".join(f"{b + ' ms':>11}" for b in backends) + "  speedup")
    for n in (int(s) for s in args.sizes.split(",")):
        SD = StateDigraph(make_graph(n, 3 * n, n))
        a = (SD.indptr, SD.order, SD.heads, SD.arc_edge, SD.alive_mask())
        results = {}
        for b in backends:
            results[("reach_all", b)] = kernels.reach_all(*a, backend=b)
            results[("bfs_tree", b)] = kernels.bfs_tree(*a, 0, backend=b)
        if HAVE_NUMBA:
            for k in ("reach_all", "bfs_tree"):
                assert np.array_equal(results[(k, "numba")], results[(k, "numpy")]), k
        cases = {
            "reach_all": lambda b: kernels.reach_all(*a, backend=b),
            "reach_from": lambda b: [kernels.reach_from(*a, s, backend=b) for s in range(0, SD.n_states, 7)],
            "bfs_tree": lambda b: [kernels.bfs_tree(*a, s, backend=b) for s in range(0, SD.n_states, 7)],
        }
        for name, call in cases.items():
            times = [bench(lambda b=b: call(b), args.repeat) * 1e3 for b in backends]
            speed = f"{times[1] / times[0]:7.1f}x" if len(times) == 2 and times[0] > 0 else ""
            print(f"{n:8d} {3 * n:6d} {name:>10} " + " ".join(f"{t:11.2f}" for t in times) + f"  {speed}")


if __name__ == "__main__":
    main()

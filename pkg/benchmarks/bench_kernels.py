"""Compiled versus pure-Python coloring counter.

    python3 benchmarks/bench_kernels.py [--graphs 40] [--repeat 3]

Both kernels run the same frontier plans; results are checked for equality
before timings are printed.
"""

import argparse
import statistics
import time

from moyforge import _dp
from moyforge.generator import GenConfig, random_graphs
from moyforge.library import web_closure
from moyforge.states import build_plan

try:
    from moyforge import _kernels
except ImportError:
    _kernels = None


def workload(n_graphs: int):
    plans = []
    for g in random_graphs(GenConfig(max_vertices=16, min_vertices=12, seed=17), n_graphs):
        plans.append(build_plan(g))
    for k in range(6):
        plans.append(build_plan(web_closure(5, [1, 2, 3, 4, 3, 2, 1, 2, 3, 4][: 5 + k])))
    return plans


def bench(fn, N, plans, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = [fn(N, p) for p, _ in plans]
        times.append(time.perf_counter() - t)
    return out, statistics.median(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--graphs", type=int, default=40)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled kernel not built; only the pure path is available")
    print(f"{'N':>3} {'plans':>6} {'pure s':>10} {'compiled s':>11} {'speedup':>8}")
    for N in (3, 4, 5, 6):
        plans = [(p, w) for p, w in workload(args.graphs) if N * w <= 64]
        pure, t_pure = bench(_dp.count_plan, N, plans, args.repeat)
        if _kernels is None:
            print(f"{N:>3} {len(plans):>6} {t_pure:>10.4f} {'-':>11} {'-':>8}")
            continue
        fast, t_fast = bench(_kernels.count_plan, N, plans, args.repeat)
        assert fast == pure, "kernels disagree"
        print(f"{N:>3} {len(plans):>6} {t_pure:>10.4f} {t_fast:>11.4f} {t_pure / t_fast:>7.1f}x")


if __name__ == "__main__":
    main()

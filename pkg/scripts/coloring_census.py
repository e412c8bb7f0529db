"""Colors per clause ratio on random k-SAT at threshold, DSATUR vs greedy."""

import argparse
import statistics

from ftsat.sat import generate_instance
from ftsat.scheduler import build_collision_graph, color_clauses


def census(ns, k, r, seeds, strategy):
    for n in ns:
        ratios = []
        for seed in range(seeds):
            inst = generate_instance(n, k, r, seed=seed)
            part = color_clauses(build_collision_graph(inst), strategy)
            ratios.append(part.c / (inst.m / n))
        yield n, statistics.median(ratios), min(ratios), max(ratios)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[40, 50, 60, 70])
    ap.add_argument("--k", type=int, default=8)
    ap.add_argument("--r", type=float, default=176.0)
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--strategy", nargs="+", default=["dsatur", "greedy-degree"])
    args = ap.parse_args()
    print("strategy,n,median_c_over_r,min,max")
    for strategy in args.strategy:
        for n, med, lo, hi in census(args.n, args.k, args.r, args.seeds, strategy):
            print(f"{strategy},{n},{med:.3f},{lo:.3f},{hi:.3f}", flush=True)

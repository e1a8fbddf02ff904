#!/usr/bin/env python3
"""Compare the compiled and pure Hamiltonicity kernels on shared corpora.

Both backends see the same seeded graphs. Reported numbers are per-graph
microseconds for the bitmask dynamic program and the unbounded backtracker,
plus the compiled-over-python speedup when the extension is importable.
"""

import argparse
import random
import time
from itertools import combinations

from hamlab import backends, from_edges


def corpus(n, p, count, seed):
    pairs = list(combinations(range(n), 2))
    out = []
    for i in range(count):
        rng = random.Random(f"bench:{seed}:{n}:{p}:{i}")
        out.append(from_edges(n, [e for e in pairs if rng.random() < p]))
    return out


def per_graph_us(mod, engine, graphs):
    t0 = time.perf_counter()
    for g in graphs:
        if engine == "dp":
            mod.dp_ham_cycle(g.adj, g.order)
        else:
            mod.bt_ham_cycle(g.adj, g.order, -1)
    return (time.perf_counter() - t0) / len(graphs) * 1e6


def main(argv=None):
    ap = argparse.ArgumentParser(
        description="benchmark the kernel backends on identical graphs")
    # the pure dp walks n * 2^n states per graph, so keep default orders
    # where the fallback still answers in milliseconds
    ap.add_argument("--orders", type=int, nargs="+", default=[10, 12, 14])
    ap.add_argument("--densities", type=float, nargs="+",
                    default=[0.2, 0.5, 0.8])
    ap.add_argument("--count", type=int, default=50,
                    help="graphs per (order, density) cell")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    mods = backends()
    names = [m for m in ("c", "python") if m in mods]
    if "c" not in mods:
        print("compiled extension not importable, timing the fallback only")
    cols = "".join(f"{name + ' ' + eng:>12}"
                   for eng in ("dp", "bt") for name in names)
    print(f"{'n':>4} {'p':>5} {'ham%':>5}" + cols
          + ("{:>10}{:>10}".format("dp gain", "bt gain") if len(names) == 2
             else ""))
    for n in args.orders:
        for p in args.densities:
            graphs = corpus(n, p, args.count, args.seed)
            ham = sum(bool(mods[names[0]].dp_ham_cycle(g.adj, g.order))
                      for g in graphs)
            row = f"{n:>4} {p:>5.2f} {100 * ham // len(graphs):>4}%"
            times = {}
            for eng in ("dp", "bt"):
                for name in names:
                    times[name, eng] = per_graph_us(mods[name], eng, graphs)
                    row += f"{times[name, eng]:>12.1f}"
            if len(names) == 2:
                for eng in ("dp", "bt"):
                    row += f"{times['python', eng] / times['c', eng]:>9.1f}x"
            print(row)


if __name__ == "__main__":
    main()

"""Times the compiled search kernel against the pure-Python one.

Run from the repository root:

    python3 benchmarks/bench_engine.py [--repeat 3] [--budget 60]

Each row solves one (graph, variant) instance with both backends and
reports node counts and wall times. The two backends explore the same
tree, so equal node counts double as a correctness spot check.
"""

from __future__ import annotations

import argparse
import sys
import time

from icg import engine
from icg.engine import SolveLimits
from icg.families import cubic_gadget, cycle, path
from icg.game import Variant
from icg.graph import random_graph


def instances():
    yield "path n=12", path(12), Variant.AB
    yield "cycle n=12", cycle(12), Variant.BA
    yield "cycle n=13", cycle(13), Variant.A
    yield "random n=12 p=0.30 seed=1", random_graph(12, 0.30, 1), Variant.B
    yield "random n=13 p=0.25 seed=2", random_graph(13, 0.25, 2), Variant.AB
    yield "random n=14 p=0.20 seed=3", random_graph(14, 0.20, 3), Variant.ALICE_SKIP
    yield "cubic gadget n=16", cubic_gadget(), Variant.A
    yield "cubic gadget n=16", cubic_gadget(), Variant.ALICE_SKIP


def best_of(repeat: int, fn):
    took = []
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        took.append(time.perf_counter() - start)
    return result, min(took)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3, help="Timings keep the best of this many runs.")
    parser.add_argument("--budget", type=float, default=120.0, help="Per-solve time budget in seconds.")
    args = parser.parse_args(argv)

    if engine.backend_name() != "compiled":
        print("compiled kernel unavailable; build it first (pip install -e .)", file=sys.stderr)
        return 1

    limits = SolveLimits(max_vertices=31, time_budget=args.budget)
    header = f"{'instance':28s} {'variant':9s} {'value':>5s} {'nodes':>10s} {'pure ms':>10s} {'fast ms':>10s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    total_pure = total_fast = 0.0
    for label, g, variant in instances():
        (value_fast, nodes_fast, _), fast = best_of(
            args.repeat, lambda: engine.solve_details(g, variant, limits, backend="compiled")
        )
        (value_pure, nodes_pure, _), pure = best_of(
            args.repeat, lambda: engine.solve_details(g, variant, limits, backend="pure")
        )
        if (value_fast, nodes_fast) != (value_pure, nodes_pure):
            print(f"MISMATCH on {label} {variant.value}: "
                  f"compiled ({value_fast}, {nodes_fast}) pure ({value_pure}, {nodes_pure})",
                  file=sys.stderr)
            return 1
        total_pure += pure
        total_fast += fast
        print(
            f"{label:28s} {variant.value:9s} {value_fast:5d} {nodes_fast:10d} "
            f"{pure * 1000:10.2f} {fast * 1000:10.2f} {pure / fast:7.1f}x"
        )
    print("-" * len(header))
    print(f"{'total':28s} {'':9s} {'':5s} {'':10s} {total_pure * 1000:10.2f} {total_fast * 1000:10.2f} {total_pure / total_fast:7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

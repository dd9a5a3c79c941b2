"""Benchmark the compiled c-separation kernel against the pure-Python one.

Times full pairwise-model enumeration (every node pair, every
conditioning subset) over seeded random CMGs, the dominant cost of the
property suites.  Run with ``python -m cmgraph.bench``.
"""

from __future__ import annotations

import argparse
import time

from . import _pykernel
from .propcheck import GeneratorConfig, random_graph
from .separation import _mask_tables

try:
    from . import _csep
except ImportError:
    _csep = None


def _enumerate_with(kernel_mod, graphs) -> tuple[float, int]:
    t0 = time.perf_counter()
    total = 0
    for g in graphs:
        _, ln, pa, ch, sp = _mask_tables(g)
        total += len(kernel_mod.all_pair_separations(len(g.nodes), ln, pa, ch, sp))
    return time.perf_counter() - t0, total


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=100, help="graphs per size")
    parser.add_argument("--nodes", type=int, nargs="*", default=[5, 6, 7, 8])
    parser.add_argument("--density", type=float, default=0.35)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    print(f"{'nodes':>5} {'graphs':>6} {'python (s)':>11} {'compiled (s)':>13} {'speedup':>8}")
    for n in args.nodes:
        graphs = [
            random_graph(GeneratorConfig(n, args.density, args.seed + k, "CMG"))
            for k in range(args.count)
        ]
        py_time, py_total = _enumerate_with(_pykernel, graphs)
        if _csep is None:
            print(f"{n:>5} {args.count:>6} {py_time:>11.3f} {'unavailable':>13} {'-':>8}")
            continue
        c_time, c_total = _enumerate_with(_csep, graphs)
        if py_total != c_total:
            raise AssertionError("kernel outputs differ between backends")
        speedup = py_time / c_time if c_time > 0 else float("inf")
        print(f"{n:>5} {args.count:>6} {py_time:>11.3f} {c_time:>13.3f} {speedup:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

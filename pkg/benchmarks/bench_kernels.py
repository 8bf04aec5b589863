#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Workloads mirror where the engine actually spends time: order closure on
random relations, the all-pairs join/meet scan on a product-of-chains
lattice, and closed-set family generation for an interval topology.

Run:  python benchmarks/bench_kernels.py
"""

import random
import time

from latnash._kernels import pure
from latnash.order import chain, product_poset

try:
    from latnash._kernels import _speedups as ext
except ImportError:
    ext = None


def _time(fn, *args, repeat=3):
    best = None
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def workload_closure():
    rng = random.Random(1)
    n = 400
    rows = [0] * n
    for _ in range(4 * n):
        rows[rng.randrange(n)] |= 1 << rng.randrange(n)
    return "transitive closure, 400 nodes", (rows, n), "transitive_closure"


def workload_pair_scan():
    c4 = chain([str(i) for i in range(4)])
    grid = product_poset([c4, c4, c4, c4])  # 256-element lattice
    n = len(grid.elements)
    members = [grid._rank[i] for i in range(n)]
    mask = (1 << n) - 1
    return ("all-pairs join/meet scan, 4^4 grid",
            (grid._up_t, grid._down_t, members, mask), "pair_scan")


def workload_family_close():
    grid = product_poset([chain(["0", "1", "2"]), chain(["0", "1"]),
                          chain(["0", "1"])])  # 12-point carrier
    subbasis = [grid.down_mask(x) for x in grid.elements]
    subbasis += [grid.up_mask(x) for x in grid.elements]
    full = (1 << 12) - 1
    return ("closed-family generation, 12-point interval subbasis",
            (subbasis, full), "family_close")


def main():
    rows = []
    for build in (workload_closure, workload_pair_scan, workload_family_close):
        label, args, fn_name = build()
        t_pure, r_pure = _time(getattr(pure, fn_name), *args)
        if ext is not None:
            t_ext, r_ext = _time(getattr(ext, fn_name), *args)
            assert r_pure == r_ext, f"backend mismatch on {label}"
            rows.append((label, t_pure, t_ext))
        else:
            rows.append((label, t_pure, None))

    width = max(len(r[0]) for r in rows)
    print(f"{'workload':<{width}}  {'pure':>10}  {'ext':>10}  {'speedup':>8}")
    for label, t_pure, t_ext in rows:
        if t_ext is None:
            print(f"{label:<{width}}  {t_pure * 1e3:>8.1f}ms  {'n/a':>10}  {'':>8}")
        else:
            print(f"{label:<{width}}  {t_pure * 1e3:>8.1f}ms  "
                  f"{t_ext * 1e3:>8.1f}ms  {t_pure / t_ext:>7.1f}x")
    if ext is None:
        print("\ncompiled extension not built; only the pure backend was timed")


if __name__ == "__main__":
    main()

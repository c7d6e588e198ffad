"""Timing comparison of the pure and compiled search kernels.

Runs the same instances through both engines, checks the results agree
tuple-for-tuple (node counts included), and prints a timing table.  Run
from the repository root:

    python3 benchmarks/bench_kernels.py
"""

from __future__ import annotations

import sys
import time

from womkit.search import _pure
from womkit.search.slices import adjacency_masks, enumerate_slice, root_orbits

try:
    from womkit.search import _speedups
except ImportError:
    print("compiled kernel not built; nothing to compare")
    sys.exit(1)


def cover_instance(q: int, n: int, i: int):
    upper = enumerate_slice(q, n, i)
    lower = enumerate_slice(q, n, i - 1)
    masks = adjacency_masks(upper, lower)
    cands: list[list[int]] = [[] for _ in lower.states]
    for v, m in enumerate(masks):
        rest = m
        while rest:
            u = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            cands[u].append(v)
    _, groups = root_orbits(upper, lower)
    return masks, len(lower.states), cands, groups


def partition_instance(q: int, n: int, i: int):
    upper = enumerate_slice(q, n, i)
    lower = enumerate_slice(q, n, i - 1)
    return adjacency_masks(upper, lower), len(lower.states)


def timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


def main() -> int:
    budget = 50_000_000
    rows = []

    for q, n, i in [(2, 7, 4), (2, 8, 3), (2, 9, 3), (2, 10, 3)]:
        masks, universe, cands, groups = cover_instance(q, n, i)
        pure, tp = timed(_pure.min_cover, masks, universe, cands, budget, groups)
        fast, tf = timed(_speedups.min_cover, masks, universe, cands, budget, groups)
        if pure != fast:
            print(f"ENGINE MISMATCH on min_cover({q},{n},{i}): {pure[:2]} vs {fast[:2]}")
            return 1
        rows.append((f"min_cover {q},{n},{i}", pure[4], tp, tf))

    for q, n, i, k in [(2, 7, 3, 5), (2, 8, 4, 5)]:
        masks, universe = partition_instance(q, n, i)
        pure, tp = timed(_pure.partition_search, masks, universe, k, budget)
        fast, tf = timed(_speedups.partition_search, masks, universe, k, budget)
        if pure != fast:
            print(f"ENGINE MISMATCH on partition_search({q},{n},{i},k={k})")
            return 1
        rows.append((f"partition {q},{n},{i} k={k}", pure[3], tp, tf))

    print(f"{'instance':<24} {'nodes':>10} {'pure (s)':>9} {'compiled (s)':>13} {'speedup':>8}")
    for label, nodes, tp, tf in rows:
        ratio = tp / tf if tf > 0 else float("inf")
        print(f"{label:<24} {nodes:>10} {tp:>9.3f} {tf:>13.3f} {ratio:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())

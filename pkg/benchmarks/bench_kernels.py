#!/usr/bin/env python3
"""Benchmark the compiled closure kernels against the pure-Python fallback.

Runs the two hot paths on representative inputs: full subset enumeration
on small graphs and batched closure on large graphs.

Usage: python benchmarks/bench_kernels.py [--quick]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from zfl import _kernels_py as kpy
from zfl import graphs

try:
    from zfl import _kernels as kc
except ImportError:
    kc = None

from zfl.sampling import UniformSource
from zfl.bitset import bools_to_words


def bench(fn, *args, repeat: int = 3) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true", help="smaller workloads")
    args = ap.parse_args()

    enum_graph = graphs.grid(4, 4) if args.quick else graphs.grid(4, 5)
    n = enum_graph.n
    batch_graph = graphs.hypercube(8)
    m = 2_000 if args.quick else 20_000

    src = UniformSource(batch_graph.n, seed=0)
    u = src.uniforms(0, m)
    masks = bools_to_words(u < 0.58)

    backends = [("python", kpy)]
    if kc is not None:
        backends.append(("compiled", kc))

    print(f"{'backend':>10s}  {'enum 2^%d (s)' % n:>16s}  {'closure x%d n=256 (s)' % m:>22s}")
    rows = {}
    for name, mod in backends:
        t_enum = bench(mod.count_zfs_by_size, enum_graph.words, 0, 1 << n,
                       repeat=1 if name == "python" else 3)
        t_batch = bench(mod.is_zfs_batch, batch_graph.words, masks,
                        repeat=1 if name == "python" else 3)
        rows[name] = (t_enum, t_batch)
        print(f"{name:>10s}  {t_enum:>16.3f}  {t_batch:>22.3f}")

    if kc is not None:
        s_enum = rows["python"][0] / rows["compiled"][0]
        s_batch = rows["python"][1] / rows["compiled"][1]
        print(f"{'speedup':>10s}  {s_enum:>15.1f}x  {s_batch:>21.1f}x")

    # cross-check while both are loaded
    if kc is not None:
        a = kc.count_zfs_by_size(enum_graph.words, 0, 1 << n)
        b = kpy.count_zfs_by_size(enum_graph.words, 0, 1 << n)
        fa = kc.is_zfs_batch(batch_graph.words, masks)
        fb = kpy.is_zfs_batch(batch_graph.words, masks)
        agree = np.array_equal(a, b) and np.array_equal(fa, fb)
        print("backends agree:", agree)
        if not agree:
            raise SystemExit(1)


if __name__ == "__main__":
    main()

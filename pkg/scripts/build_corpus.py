#!/usr/bin/env python3
"""Build the connected-graph corpus file shipped with the package:
every connected graph on 1..8 vertices, one canonical graph6 line each.

Generation is by vertex augmentation with canonical-form dedup. The
canonical form is the minimum adjacency bitstring over all orderings
consistent with the color-refinement partition, which is isomorphism
invariant. Class counts are cross-checked against the published numbers
of graphs and connected graphs per order before writing anything.

Usage: python scripts/build_corpus.py [--max-n 8] [--out src/zfl/data/connected_upto8.g6]
"""

from __future__ import annotations

import argparse
import itertools
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from zfl.graphs import Graph, graph6_encode  # noqa: E402

# graphs / connected graphs on n vertices up to isomorphism
ALL_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346}
CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}


def refine_partition(rows: list[int], n: int) -> list[int]:
    """Color refinement to a fixpoint. Colors are assigned from sorted
    signatures, so they do not depend on the input labeling."""
    colors = [0] * n
    # start from degrees
    sigs = sorted(set(r.bit_count() for r in rows))
    colors = [sigs.index(r.bit_count()) for r in rows]
    while True:
        raw = []
        for v in range(n):
            nbr = sorted(colors[u] for u in range(n) if rows[v] >> u & 1)
            raw.append((colors[v], tuple(nbr)))
        order = sorted(set(raw))
        new = [order.index(r) for r in raw]
        if new == colors:
            return colors
        colors = new


def canonical_key(rows: list[int], n: int) -> tuple:
    """Minimum upper-triangle bitstring over orderings that respect the
    refined color classes."""
    colors = refine_partition(rows, n)
    classes: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        classes.setdefault(c, []).append(v)
    class_lists = [classes[c] for c in sorted(classes)]
    best = None
    for perm_parts in itertools.product(*(itertools.permutations(cl) for cl in class_lists)):
        order = [v for part in perm_parts for v in part]
        bits = 0
        for j in range(1, n):
            vj = order[j]
            for i in range(j):
                bits = (bits << 1) | (rows[order[i]] >> vj & 1)
        if best is None or bits < best:
            best = bits
    return (n, best)


def is_connected(rows: list[int], n: int) -> bool:
    seen = 1
    stack = [0]
    while stack:
        v = stack.pop()
        fresh = rows[v] & ~seen
        seen |= fresh
        stack.extend(u for u in range(n) if fresh >> u & 1)
    return seen == (1 << n) - 1


def generate(max_n: int) -> dict[int, list[list[int]]]:
    """All graphs up to isomorphism on 1..max_n vertices, as adjacency
    rows, one representative per class."""
    by_n: dict[int, list[list[int]]] = {1: [[0]]}
    for n in range(2, max_n + 1):
        t0 = time.time()
        seen: set[tuple] = set()
        reps: list[list[int]] = []
        for smaller in by_n[n - 1]:
            for nbrs in range(1 << (n - 1)):
                rows = [r | ((nbrs >> v & 1) << (n - 1)) for v, r in enumerate(smaller)]
                rows.append(nbrs)
                key = canonical_key(rows, n)
                if key not in seen:
                    seen.add(key)
                    reps.append(rows)
        by_n[n] = reps
        print(f"n={n}: {len(reps)} classes in {time.time() - t0:.1f}s", file=sys.stderr)
        if n in ALL_COUNTS and len(reps) != ALL_COUNTS[n]:
            raise SystemExit(f"class count mismatch at n={n}: "
                             f"got {len(reps)}, expected {ALL_COUNTS[n]}")
    return by_n


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument("--out", default="src/zfl/data/connected_upto8.g6")
    args = ap.parse_args()

    by_n = generate(args.max_n)
    lines = []
    for n in range(1, args.max_n + 1):
        chunk = []
        for rows in by_n[n]:
            if is_connected(rows, n):
                g = Graph(n, tuple(rows))
                chunk.append(graph6_encode(g))
        if n in CONNECTED_COUNTS and len(chunk) != CONNECTED_COUNTS[n]:
            raise SystemExit(f"connected count mismatch at n={n}: "
                             f"got {len(chunk)}, expected {CONNECTED_COUNTS[n]}")
        print(f"n={n}: {len(chunk)} connected", file=sys.stderr)
        lines.extend(sorted(chunk))
    Path(args.out).write_text("\n".join(lines) + "\n", encoding="ascii")
    print(f"wrote {len(lines)} graphs to {args.out}", file=sys.stderr)


if __name__ == "__main__":
    main()

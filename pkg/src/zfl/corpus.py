"""Tree corpus generation, graph6 corpus ingestion, and coefficientwise or
exact-rational verification runs over whole corpora, reported with enough
metadata to cite."""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import __version__
from .bitset import bit_list, to_mask
from .forcing import is_zfs, is_zfs_many
from .graphs import Graph, graph6_encode, make_graph
from .graphs import path as path_graph
from .graphs import read_graph6_file
from .polynomial import (
    degree_count_bound,
    path_count_lower_bound,
    tree_count_bound,
    zf_path_closed_form,
    zf_path_polynomial,
    zf_polynomial_exact,
)
from .sampling import threshold_exact_graph
from .structure import core_project_set, two_core

TREE_ENUM_CAP = 16


# ---------------------------------------------------------------------------
# free tree enumeration


def _rooted_level_sequences(n: int) -> Iterator[list[int]]:
    """Canonical level sequences of all rooted trees on n vertices, in
    decreasing lexicographic order."""
    levels = list(range(1, n + 1))
    while True:
        yield levels
        p = -1
        for i in range(n - 1, 0, -1):
            if levels[i] > 2:
                p = i
                break
        if p < 0:
            return
        q = -1
        for i in range(p - 1, -1, -1):
            if levels[i] == levels[p] - 1:
                q = i
                break
        levels = levels[:]
        for i in range(p, n):
            levels[i] = levels[i - (p - q)]


def _parents_from_levels(levels: Sequence[int]) -> list[int]:
    parents = [-1] * len(levels)
    last_at = {1: 0}
    for i in range(1, len(levels)):
        parents[i] = last_at[levels[i] - 1]
        last_at[levels[i]] = i
    return parents


def _ahu_code(adj: list[list[int]], root: int, block: int) -> str:
    """Canonical string of the subtree at root when the edge to block is
    ignored. Complete isomorphism invariant for rooted trees."""
    def rec(v: int, parent: int) -> str:
        parts = sorted(rec(u, v) for u in adj[v] if u != parent and u != block)
        return "(" + "".join(parts) + ")"

    return rec(root, -1)


def _free_tree_key(parents: Sequence[int]) -> str:
    """Canonical key of the free tree given by a parent array: the rooted
    canonical form anchored at the centroid, or at the centroid pair."""
    n = len(parents)
    adj: list[list[int]] = [[] for _ in range(n)]
    children: list[list[int]] = [[] for _ in range(n)]
    for v in range(1, n):
        adj[v].append(parents[v])
        adj[parents[v]].append(v)
        children[parents[v]].append(v)
    size = [1] * n
    for v in range(n - 1, 0, -1):
        size[parents[v]] += size[v]
    best, cents = n + 1, []
    for v in range(n):
        heaviest = max((size[c] for c in children[v]), default=0)
        heaviest = max(heaviest, n - size[v])
        if heaviest < best:
            best, cents = heaviest, [v]
        elif heaviest == best:
            cents.append(v)
    if len(cents) == 1:
        return "C" + _ahu_code(adj, cents[0], -1)
    a, b = cents
    return "B" + "".join(sorted((_ahu_code(adj, a, b), _ahu_code(adj, b, a))))


def enumerate_free_trees(n: int) -> Iterator[Graph]:
    """One representative per isomorphism class of free trees on n
    vertices. Generates canonical rooted trees and keeps the first tree of
    each centroid-anchored canonical class."""
    if not 1 <= n <= TREE_ENUM_CAP:
        raise ValueError(f"tree enumeration supports 1 <= n <= {TREE_ENUM_CAP}")
    if n == 1:
        yield make_graph(1, [], "tree:1#0")
        return
    seen: set[str] = set()
    idx = 0
    for levels in _rooted_level_sequences(n):
        parents = _parents_from_levels(levels)
        key = _free_tree_key(parents)
        if key in seen:
            continue
        seen.add(key)
        yield make_graph(n, [(parents[v], v) for v in range(1, n)], f"tree:{n}#{idx}")
        idx += 1


def rooted_tree_counts(n: int) -> list[int]:
    """Number of rooted trees on 1..n vertices, by the classical divisor
    convolution recurrence."""
    r = [0] * (n + 1)
    r[1] = 1
    for m in range(2, n + 1):
        total = 0
        for k in range(1, m):
            s = sum(d * r[d] for d in range(1, k + 1) if k % d == 0)
            total += s * r[m - k]
        r[m] = total // (m - 1)
    return r[1:]


def free_tree_count(n: int) -> int:
    """Number of free trees on n vertices, from the rooted counts."""
    if n < 1:
        raise ValueError("need n >= 1")
    r = [0] + rooted_tree_counts(n)
    pairs = sum(r[i] * r[n - i] for i in range(1, n))
    extra = Fraction(r[n // 2], 2) if n % 2 == 0 else Fraction(0)
    return int(r[n] - Fraction(pairs, 2) + extra)


# ---------------------------------------------------------------------------
# corpus loading


def corpus_hash(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def load_corpus(spec: str) -> tuple[list[Graph], str, str]:
    """Resolve a corpus spec to (graphs, descriptor, hash).

    Specs: 'trees:N' for all free trees on N vertices, 'trees:A-B' for a
    size range, or a path to a graph6 file (one graph per line).
    """
    if spec.startswith("trees:"):
        arg = spec[len("trees:"):]
        if "-" in arg:
            a, _, b = arg.partition("-")
            sizes = range(int(a), int(b) + 1)
        else:
            sizes = range(int(arg), int(arg) + 1)
        graphs = [t for m in sizes for t in enumerate_free_trees(m)]
        digest = hashlib.sha256(
            "\n".join(graph6_encode(g) for g in graphs).encode()
        ).hexdigest()
        return graphs, spec, digest
    return read_graph6_file(spec), spec, corpus_hash(spec)


# ---------------------------------------------------------------------------
# verification reports


@dataclass
class VerificationReport:
    claim: str
    corpus: str
    corpus_hash: str | None
    instances: int = 0
    skipped: int = 0
    counterexamples: list = field(default_factory=list)
    runtime_s: float = 0.0
    seed: int | None = None
    grid: list[str] | None = None
    version: str = __version__
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_dict(self, include_runtime: bool = True) -> dict:
        out = {
            "claim": self.claim,
            "passed": self.passed,
            "corpus": self.corpus,
            "corpus_hash": self.corpus_hash,
            "instances": self.instances,
            "skipped": self.skipped,
            "counterexamples": self.counterexamples,
            "seed": self.seed,
            "grid": self.grid,
            "version": self.version,
            "extra": self.extra,
        }
        if include_runtime:
            out["runtime_s"] = round(self.runtime_s, 3)
        return out

    def to_json(self, include_runtime: bool = True) -> str:
        return json.dumps(self.to_dict(include_runtime), sort_keys=True)


def _grid_fractions(grid: Sequence[str | float | Fraction]) -> list[Fraction]:
    out = []
    for item in grid:
        frac = Fraction(str(item)) if not isinstance(item, Fraction) else item
        if not 0 <= frac <= 1:
            raise ValueError(f"grid point {item} outside [0, 1]")
        out.append(frac)
    return out


def verify_path_count(corpus: Iterable[Graph], corpus_desc: str = "",
                      corpus_digest: str | None = None, max_n: int = 24,
                      threads: int | None = None) -> VerificationReport:
    """Coefficientwise check that no corpus graph has more zero forcing
    sets of any size than the path on the same number of vertices. A
    coefficientwise pass implies the probability comparison for every p."""
    t0 = time.perf_counter()
    report = VerificationReport("path-count", corpus_desc, corpus_digest)
    for g in corpus:
        poly = zf_polynomial_exact(g, max_n=max_n, threads=threads)
        report.instances += 1
        for k in range(g.n + 1):
            pk = zf_path_closed_form(g.n, k)
            if poly.coeffs[k] > pk:
                report.counterexamples.append({
                    "graph6": graph6_encode(g), "k": k,
                    "count": str(poly.coeffs[k]), "path_count": str(pk),
                })
    report.runtime_s = time.perf_counter() - t0
    return report


def verify_tree_vs_path(n: int, grid: Sequence, max_n: int = 24,
                        threads: int | None = None,
                        min_p: Fraction | None = None) -> VerificationReport:
    """Exact-rational check that every n-vertex tree other than the path
    has strictly smaller forcing probability at every grid point inside
    (0, 1). Records the minimum margin seen."""
    t0 = time.perf_counter()
    pgrid = _grid_fractions(grid)
    if min_p is not None:
        pgrid = [p for p in pgrid if p > min_p]
    report = VerificationReport(
        "tree-vs-path", f"trees:{n}", None,
        grid=[str(p) for p in pgrid],
    )
    path_poly = zf_path_polynomial(n)
    path_vals = {p: path_poly.prob_exact(p) for p in pgrid}
    min_margin: Fraction | None = None
    for tree in enumerate_free_trees(n):
        if max(tree.degrees) <= 2:
            continue  # the path itself
        coeffs = zf_polynomial_exact(tree, max_n=max_n, threads=threads)
        report.instances += 1
        for p in pgrid:
            if not 0 < p < 1:
                continue
            margin = path_vals[p] - coeffs.prob_exact(p)
            if min_margin is None or margin < min_margin:
                min_margin = margin
            if margin <= 0:
                report.counterexamples.append({
                    "graph6": graph6_encode(tree), "p": str(p),
                    "tree_prob": str(coeffs.prob_exact(p)),
                    "path_prob": str(path_vals[p]),
                })
    if min_margin is not None:
        report.extra["min_margin"] = float(min_margin)
        report.extra["min_margin_exact"] = str(min_margin)
    report.runtime_s = time.perf_counter() - t0
    return report


def _minimal_low_degree_budget(degree_counts: dict[int, int], d: int) -> int:
    """Smallest N >= 0 with count(degree k) <= N^k for all 1 <= k < d."""
    need = 0
    for k in range(1, d):
        c = degree_counts.get(k, 0)
        if c == 0:
            continue
        n_k = 1
        while n_k ** k < c:
            n_k += 1
        need = max(need, n_k)
    return need


def verify_degree_bounds(corpus: Iterable[Graph], grid: Sequence,
                         corpus_desc: str = "", corpus_digest: str | None = None,
                         max_n: int = 24, threads: int | None = None) -> VerificationReport:
    """Check every degree-based bound against exact values over a corpus,
    in exact rational arithmetic, skipping instances whose preconditions
    fail. Probability bounds are checked on the grid; count bounds at
    every size."""
    import math

    t0 = time.perf_counter()
    pgrid = _grid_fractions(grid)
    report = VerificationReport(
        "degree-bounds", corpus_desc, corpus_digest, grid=[str(p) for p in pgrid]
    )
    for g in corpus:
        poly = zf_polynomial_exact(g, max_n=max_n, threads=threads)
        n = g.n
        degs = g.degrees
        if g.edge_count == 0:
            report.skipped += 1
            continue
        report.instances += 1
        exact = {p: poly.prob_exact(p) for p in pgrid}
        is_tree = g.edge_count == n - 1 and _connected(g)

        # probability upper bound from the degree sum
        for p in pgrid:
            bound = sum(d * p ** d for d in degs if d)
            if bound < exact[p]:
                report.counterexamples.append(_cex(g, "degree-sum", p=str(p),
                                                   bound=str(bound), exact=str(exact[p])))

        # probability upper bound from the minimum degree
        delta = min(degs)
        if delta >= 1:
            for p in pgrid:
                bound = delta * n * p ** delta
                if bound < exact[p]:
                    report.counterexamples.append(_cex(g, "min-degree", p=str(p),
                                                       bound=str(bound), exact=str(exact[p])))

        # probability upper bound allowing a few low-degree vertices
        if delta >= 1:
            counts: dict[int, int] = {}
            for d in degs:
                counts[d] = counts.get(d, 0) + 1
            for d in range(1, max(degs) + 2):
                budget = _minimal_low_degree_budget(counts, d)
                cutoff = math.exp(-1.0 / d)
                for p in pgrid:
                    if float(p) > cutoff:
                        continue
                    bound = 4 * p * budget + d * n * p ** d
                    if bound < exact[p]:
                        report.counterexamples.append(_cex(
                            g, "few-low-degree", p=str(p), d=d, N=budget,
                            bound=str(bound), exact=str(exact[p])))

        # count upper bound from the degree sequence
        for k in range(n + 1):
            bound_k = degree_count_bound(g, k)
            if bound_k < poly.coeffs[k] and k < n:
                report.counterexamples.append(_cex(g, "degree-count", k=k,
                                                   bound=str(bound_k),
                                                   exact=str(poly.coeffs[k])))

        # path count lower bound and the tree count upper bound
        if is_tree:
            if max(degs) <= 2:
                for k in range(n + 1):
                    lb = path_count_lower_bound(n, k)
                    if lb > poly.coeffs[k]:
                        report.counterexamples.append(_cex(g, "path-count-lower", k=k,
                                                           bound=str(lb),
                                                           exact=str(poly.coeffs[k])))
            else:
                for k in range(n + 1):
                    ub = tree_count_bound(n, k)
                    if Fraction(poly.coeffs[k]) > ub:
                        report.counterexamples.append(_cex(g, "tree-count", k=k,
                                                           bound=str(ub),
                                                           exact=str(poly.coeffs[k])))
    report.runtime_s = time.perf_counter() - t0
    return report


def _cex(g: Graph, bound: str, **kw) -> dict:
    out = {"graph6": graph6_encode(g), "bound": bound}
    out.update(kw)
    return out


def _connected(g: Graph) -> bool:
    seen = 1
    stack = [0]
    while stack:
        v = stack.pop()
        fresh = g.rows[v] & ~seen
        seen |= fresh
        stack.extend(bit_list(fresh))
    return seen == g.full_mask


def verify_core_projection(pairs: int, seed: int, n_max: int = 12,
                           graphs_per_batch: int = 50) -> VerificationReport:
    """Randomized check that projecting a zero forcing set onto the 2-core
    yields a zero forcing set of the core. Pairs are random (graph, set)
    draws with the set conditioned to be zero forcing."""
    t0 = time.perf_counter()
    report = VerificationReport("core-projection", f"random:n<={n_max}", None, seed=seed)
    rng = np.random.default_rng(seed)
    while report.instances < pairs:
        n = int(rng.integers(2, n_max + 1))
        edge_p = float(rng.uniform(0.15, 0.75))
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < edge_p]
        g = make_graph(n, edges)
        core_graph = two_core(g).core
        # draw Bernoulli sets at a random density, keep the forcing ones
        budget = min(graphs_per_batch, pairs - report.instances)
        set_p = float(rng.uniform(0.3, 0.9))
        bools = rng.random((8 * budget, n)) < set_p
        cand = [to_mask(row.nonzero()[0].tolist()) for row in bools]
        flags = is_zfs_many(g, cand)
        kept = [m for m, f in zip(cand, flags) if f]
        for mask in kept[:budget]:
            report.instances += 1
            cp = core_project_set(g, mask)
            if core_graph is None:
                continue  # empty core: holds vacuously
            if not is_zfs(core_graph, cp.projected_set):
                report.counterexamples.append({
                    "graph6": graph6_encode(g),
                    "set": bit_list(mask),
                    "projected": bit_list(cp.projected_set),
                })
    report.runtime_s = time.perf_counter() - t0
    return report


def verify_threshold_min_path(corpus: Iterable[Graph], corpus_desc: str = "",
                              corpus_digest: str | None = None,
                              max_n: int = 24) -> VerificationReport:
    """Check that among corpus graphs of each order, none has a smaller
    threshold probability than the path."""
    t0 = time.perf_counter()
    report = VerificationReport("threshold-min-path", corpus_desc, corpus_digest)
    path_thresholds: dict[int, float] = {}
    for g in corpus:
        if g.n not in path_thresholds:
            path_thresholds[g.n] = threshold_exact_graph(path_graph(g.n)).p_hat
        report.instances += 1
        t = threshold_exact_graph(g, max_n=max_n).p_hat
        if t < path_thresholds[g.n] - 1e-9:
            report.counterexamples.append({
                "graph6": graph6_encode(g),
                "threshold": t,
                "path_threshold": path_thresholds[g.n],
            })
    report.runtime_s = time.perf_counter() - t0
    return report


CLAIMS = {
    "path-count": "no graph beats the path's zero-forcing-set counts (coefficientwise)",
    "tree-vs-path": "strict probability dominance of the path among same-order trees",
    "degree-bounds": "every degree-based bound dominates the exact quantity",
    "core-projection": "projecting a forcing set onto the 2-core keeps it forcing",
    "threshold-min-path": "the path has the smallest threshold in the corpus",
}

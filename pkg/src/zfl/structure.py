"""Structural reductions: pendant paths and trees, the 2-core, projection
of a blue set onto the core, leaf-clique lifting, and cut-vertex splits."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .bitset import bit_list, bits, full_mask, to_mask
from .forcing import is_zfs
from .graphs import Graph


@dataclass(frozen=True)
class PendantPath:
    """Path v1..vk hanging off the rest of the graph: d(v1) = 1, interior
    degrees 2, and the anchor vk has degree > 2."""

    vertices: tuple[int, ...]

    @property
    def pendant(self) -> int:
        return self.vertices[0]

    @property
    def anchor(self) -> int:
        return self.vertices[-1]


@dataclass(frozen=True)
class PendantTree:
    """Maximal induced tree meeting the 2-core in exactly one vertex."""

    vertices: int  # mask, anchor included
    anchor: int


@dataclass(frozen=True)
class CoreProjection:
    """The 2-core as its own graph plus the projection data.

    core_vertices maps core indices back to the original graph; the
    projected set lives in core indexing.
    """

    core: Graph | None
    core_vertices: tuple[int, ...]
    projected_set: int


def _peel_to_core_mask(g: Graph) -> int:
    """Vertices left after repeatedly deleting degree <= 1 vertices."""
    alive = g.full_mask
    queue = [v for v in range(g.n) if (g.rows[v] & alive).bit_count() <= 1]
    alive &= ~to_mask(queue)
    while queue:
        v = queue.pop()
        for u in bits(g.rows[v]):
            if alive >> u & 1 and (g.rows[u] & alive).bit_count() <= 1:
                alive &= ~(1 << u)
                queue.append(u)
    return alive


def induced_subgraph(g: Graph, vertices: int | Iterable[int],
                     label: str | None = None) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph plus the tuple mapping new indices to old ones."""
    mask = to_mask(vertices, g.n)
    keep = bit_list(mask)
    index = {v: i for i, v in enumerate(keep)}
    rows = []
    for v in keep:
        row = 0
        for u in bits(g.rows[v] & mask):
            row |= 1 << index[u]
        rows.append(row)
    return Graph(len(keep), tuple(rows), label), tuple(keep)


def two_core(g: Graph) -> CoreProjection:
    """The 2-core: the fixpoint of deleting isolated and degree-1 vertices.
    core is None when everything peels away (forests)."""
    mask = _peel_to_core_mask(g)
    if mask == 0:
        return CoreProjection(None, (), 0)
    core, keep = induced_subgraph(g, mask, label="2-core")
    return CoreProjection(core, keep, 0)


def pendant_paths(g: Graph) -> list[PendantPath]:
    """All maximal pendant paths. Leaves whose degree-2 walk ends at another
    degree-1 vertex belong to path components and are not reported."""
    out = []
    for leaf in range(g.n):
        if g.degree(leaf) != 1:
            continue
        walk = [leaf]
        prev = leaf
        cur = next(bits(g.rows[leaf]))
        while g.degree(cur) == 2:
            walk.append(cur)
            nxt = next(u for u in bits(g.rows[cur]) if u != prev)
            prev, cur = cur, nxt
        if g.degree(cur) > 2:
            walk.append(cur)
            out.append(PendantPath(tuple(walk)))
    return out


def pendant_trees(g: Graph) -> list[PendantTree]:
    """Maximal induced trees hanging off the 2-core, one per anchor subtree
    group. Components with no core vertices are not reported."""
    core_mask = _peel_to_core_mask(g)
    if core_mask == 0:
        return []
    out = []
    for w in range(g.n):
        if not core_mask >> w & 1:
            continue
        hanging = g.rows[w] & ~core_mask
        if not hanging:
            continue
        seen = 1 << w
        stack = bit_list(hanging)
        seen |= hanging
        while stack:
            v = stack.pop()
            fresh = g.rows[v] & ~core_mask & ~seen
            seen |= fresh
            stack.extend(bits(fresh))
        out.append(PendantTree(vertices=seen, anchor=w))
    return out


def core_project_set(g: Graph, blue: int | Iterable[int]) -> CoreProjection:
    """Project a blue set onto the 2-core: keep the core members and add
    the anchor of every pendant tree whose blue restriction already forces
    that tree."""
    mask = to_mask(blue, g.n)
    core_mask = _peel_to_core_mask(g)
    if core_mask == 0:
        return CoreProjection(None, (), 0)
    core, keep = induced_subgraph(g, core_mask, label="2-core")
    index = {v: i for i, v in enumerate(keep)}
    projected = 0
    for v in bits(mask & core_mask):
        projected |= 1 << index[v]
    for tree in pendant_trees(g):
        sub, sub_keep = induced_subgraph(g, tree.vertices)
        sub_index = {v: i for i, v in enumerate(sub_keep)}
        restricted = 0
        for v in bits(mask & tree.vertices):
            restricted |= 1 << sub_index[v]
        if is_zfs(sub, restricted):
            projected |= 1 << index[tree.anchor]
    return CoreProjection(core, keep, projected)


def add_leaf_clique(g: Graph, leaves: int | Iterable[int]) -> Graph:
    """Add every edge among a set of degree-1 vertices."""
    mask = to_mask(leaves, g.n)
    for v in bits(mask):
        if g.degree(v) != 1:
            raise ValueError(f"vertex {v} has degree {g.degree(v)}, not 1")
    rows = list(g.rows)
    for v in bits(mask):
        rows[v] |= mask & ~(1 << v)
    return Graph(g.n, tuple(rows))


def connected_components(g: Graph, within: int | None = None) -> list[int]:
    """Component masks, restricted to the given vertex mask if any."""
    alive = g.full_mask if within is None else within
    comps = []
    seen = 0
    for v in range(g.n):
        if not alive >> v & 1 or seen >> v & 1:
            continue
        comp = 1 << v
        stack = [v]
        while stack:
            u = stack.pop()
            fresh = g.rows[u] & alive & ~comp
            comp |= fresh
            stack.extend(bits(fresh))
        seen |= comp
        comps.append(comp)
    return comps


def is_cut_vertex(g: Graph, w: int) -> bool:
    if g.n <= 2:
        return False
    rest = g.full_mask & ~(1 << w)
    before = len(connected_components(g))
    after = len(connected_components(g, rest))
    return after > before


def split_at_cut_vertex(g: Graph, w: int) -> tuple[tuple[Graph, tuple[int, ...]],
                                                   tuple[Graph, tuple[int, ...]]]:
    """Split at a cut vertex into the two induced sides, each keeping w.
    Side one is the component of g - w holding the lowest vertex index.
    Each side is returned with its map from new to old indices."""
    rest = g.full_mask & ~(1 << w)
    comps = connected_components(g, rest)
    if len(comps) < 2:
        raise ValueError(f"vertex {w} is not a cut vertex")
    comps.sort(key=lambda c: (c & -c).bit_length())
    first = comps[0] | 1 << w
    second = g.full_mask & ~comps[0]
    return induced_subgraph(g, first), induced_subgraph(g, second)

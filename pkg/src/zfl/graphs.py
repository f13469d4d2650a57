"""Immutable bitset-backed simple graphs, standard families, products,
and graph6 text I/O."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .bitset import WORD, bit_list, bits, full_mask, nwords

GRAPH6_HEADER = ">>graph6<<"
_GRAPH6_MAX_N = 258047  # limit of the three-byte size header


class GraphError(ValueError):
    """Invalid graph construction or malformed graph input."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    rows[v] is the open neighborhood of v as a bitmask. Instances are
    immutable after construction and safe to share across threads.
    """

    n: int
    rows: tuple[int, ...]
    label: str | None = None

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("graph needs at least one vertex")
        if len(self.rows) != self.n:
            raise GraphError("adjacency row count does not match n")
        fm = full_mask(self.n)
        for v, row in enumerate(self.rows):
            if row & ~fm:
                raise GraphError(f"row {v} has neighbors outside 0..{self.n - 1}")
            if row >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
        for v, row in enumerate(self.rows):
            for u in bits(row):
                if not self.rows[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")

    # equality and hashing ignore the label
    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    @functools.cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(row.bit_count() for row in self.rows)

    @functools.cached_property
    def edge_count(self) -> int:
        return sum(self.degrees) // 2

    @functools.cached_property
    def full_mask(self) -> int:
        return full_mask(self.n)

    @functools.cached_property
    def words(self) -> np.ndarray:
        """Adjacency as an (n, nwords(n)) uint64 matrix for the kernels."""
        w = nwords(self.n)
        out = np.empty((self.n, w), dtype=np.uint64)
        mask64 = (1 << WORD) - 1
        for v, row in enumerate(self.rows):
            for i in range(w):
                out[v, i] = (row >> (WORD * i)) & mask64
        out.setflags(write=False)
        return out

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def neighbors(self, v: int) -> Iterator[int]:
        return bits(self.rows[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bit_list(self.rows[u]) if u < v]

    def min_degree(self) -> int:
        return min(self.degrees)

    def relabel(self, label: str | None) -> "Graph":
        return Graph(self.n, self.rows, label)

    def __repr__(self):
        tag = f" {self.label!r}" if self.label else ""
        return f"<Graph{tag} n={self.n} m={self.edge_count}>"


def make_graph(n: int, edges: Iterable[tuple[int, int]], label: str | None = None) -> Graph:
    """Build a graph from an edge list. Duplicate edges are merged; loops
    and out-of-range endpoints are rejected."""
    if n < 1:
        raise GraphError("graph needs at least one vertex")
    rows = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u},{v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows), label)


def from_adjacency(rows: Sequence[int], label: str | None = None) -> Graph:
    return Graph(len(rows), tuple(rows), label)


# ---------------------------------------------------------------------------
# families


def path(n: int) -> Graph:
    """Path on n vertices in path order: edges (i, i+1)."""
    if n < 1:
        raise GraphError("path needs n >= 1")
    return make_graph(n, [(i, i + 1) for i in range(n - 1)], f"path:{n}")


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    edges = [(i, (i + 1) % n) for i in range(n)]
    return make_graph(n, edges, f"cycle:{n}")


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return make_graph(n, edges, f"complete:{n}")


def empty_graph(n: int) -> Graph:
    """n isolated vertices."""
    if n < 1:
        raise GraphError("empty graph needs n >= 1")
    return make_graph(n, [], f"nk1:{n}")


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    """Complete multipartite graph; parts are consecutive index blocks."""
    if not sizes or any(s < 1 for s in sizes):
        raise GraphError("every part needs size >= 1")
    n = sum(sizes)
    starts = []
    acc = 0
    for s in sizes:
        starts.append(acc)
        acc += s
    edges = []
    for a in range(len(sizes)):
        for b in range(a + 1, len(sizes)):
            for u in range(starts[a], starts[a] + sizes[a]):
                for v in range(starts[b], starts[b] + sizes[b]):
                    edges.append((u, v))
    name = "kpartite:" + ",".join(str(s) for s in sizes)
    return make_graph(n, edges, name)


def wheel(n: int) -> Graph:
    """Wheel on n vertices: cycle 0..n-2 plus hub n-1 joined to the cycle."""
    if n < 4:
        raise GraphError("wheel needs n >= 4")
    edges = [(i, (i + 1) % (n - 1)) for i in range(n - 1)]
    edges += [(i, n - 1) for i in range(n - 1)]
    return make_graph(n, edges, f"wheel:{n}")


def triangle_with_path(n: int) -> Graph:
    """Path 0..n-1 plus the chord (0, 2), a triangle with a pendant path."""
    if n < 3:
        raise GraphError("triangle with path needs n >= 3")
    edges = [(i, i + 1) for i in range(n - 1)] + [(0, 2)]
    return make_graph(n, edges, f"rgraph:{n}")


def grid(m: int, n: int) -> Graph:
    """m x n grid; vertex (i, j) is index i*n + j."""
    if m < 1 or n < 1:
        raise GraphError("grid needs m, n >= 1")
    edges = []
    for i in range(m):
        for j in range(n):
            v = i * n + j
            if j + 1 < n:
                edges.append((v, v + 1))
            if i + 1 < m:
                edges.append((v, v + n))
    return make_graph(m * n, edges, f"grid:{m}x{n}")


def hypercube(d: int) -> Graph:
    """d-dimensional hypercube on 2^d vertices; edges flip one bit."""
    if d < 0:
        raise GraphError("hypercube needs d >= 0")
    n = 1 << d
    edges = [(v, v ^ (1 << b)) for v in range(n) for b in range(d) if v < v ^ (1 << b)]
    return make_graph(n, edges, f"hypercube:{d}")


def left_complete_binary_tree(n: int) -> Graph:
    """Binary tree with all levels full except the last, filled left to
    right (heap shape): children of i are 2i+1 and 2i+2."""
    if n < 1:
        raise GraphError("binary tree needs n >= 1")
    edges = []
    for v in range(1, n):
        edges.append(((v - 1) // 2, v))
    return make_graph(n, edges, f"bintree:{n}")


_FAMILY_HELP = (
    "path:N cycle:N complete:N nk1:N kpartite:N1,N2,... wheel:N rgraph:N "
    "grid:MxN hypercube:D bintree:N"
)


def family(descriptor: str) -> Graph:
    """Build a family graph from a descriptor string such as path:16,
    grid:4x4, hypercube:8, wheel:10, rgraph:5, kpartite:2,3."""
    name, sep, arg = descriptor.partition(":")
    if not sep:
        raise GraphError(f"bad family descriptor {descriptor!r}; expected {_FAMILY_HELP}")
    name = name.strip().lower()
    arg = arg.strip()
    try:
        if name == "path":
            return path(int(arg))
        if name == "cycle":
            return cycle(int(arg))
        if name in ("complete", "kn"):
            return complete(int(arg))
        if name == "nk1":
            return empty_graph(int(arg))
        if name == "kpartite":
            return complete_multipartite([int(s) for s in arg.split(",")])
        if name == "wheel":
            return wheel(int(arg))
        if name == "rgraph":
            return triangle_with_path(int(arg))
        if name == "grid":
            m, _, k = arg.partition("x")
            return grid(int(m), int(k))
        if name == "hypercube":
            return hypercube(int(arg))
        if name == "bintree":
            return left_complete_binary_tree(int(arg))
    except ValueError as exc:
        raise GraphError(f"bad family arguments in {descriptor!r}: {exc}") from exc
    raise GraphError(f"unknown family {name!r}; expected one of {_FAMILY_HELP}")


def is_family_descriptor(text: str) -> bool:
    name = text.partition(":")[0].strip().lower()
    return name in (
        "path", "cycle", "complete", "kn", "nk1", "kpartite", "wheel",
        "rgraph", "grid", "hypercube", "bintree",
    )


# ---------------------------------------------------------------------------
# products


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union; g2 vertex indices are shifted by g1.n."""
    n = g1.n + g2.n
    rows = list(g1.rows) + [row << g1.n for row in g2.rows]
    return Graph(n, tuple(rows))


def join(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union plus every edge between the two sides."""
    n = g1.n + g2.n
    left_all = full_mask(g1.n)
    right_all = full_mask(g2.n) << g1.n
    rows = [row | right_all for row in g1.rows]
    rows += [(row << g1.n) | left_all for row in g2.rows]
    return Graph(n, tuple(rows))


# ---------------------------------------------------------------------------
# graph6 text format


def _g6_size_prefix(n: int) -> list[int]:
    if n <= 62:
        return [n + 63]
    if n <= _GRAPH6_MAX_N:
        return [126, ((n >> 12) & 63) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63]
    raise GraphError(f"graph6 encoding supports n <= {_GRAPH6_MAX_N}")


def _g6_parse_size(data: bytes) -> tuple[int, int]:
    """Return (n, offset of first payload byte)."""
    if not data:
        raise GraphError("empty graph6 line")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        raise GraphError("graph6 sizes above the three-byte header are not supported")
    if len(data) < 4:
        raise GraphError("truncated graph6 size header")
    n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
    return n, 4


def graph6_encode(g: Graph) -> str:
    """Encode as graph6: upper-triangle bits in column-major order, packed
    six per character, each character offset by 63."""
    out = _g6_size_prefix(g.n)
    acc = 0
    nbits = 0
    for v in range(1, g.n):
        for u in range(v):
            acc = (acc << 1) | (g.rows[u] >> v & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = 0
                nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out).decode("ascii")


def graph6_decode(line: str, label: str | None = None) -> Graph:
    """Decode one graph6 line. A leading '>>graph6<<' header is tolerated."""
    s = line.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):].strip()
    data = s.encode("ascii")
    n, off = _g6_parse_size(data)
    if n < 1:
        raise GraphError("graph6 line encodes an empty graph")
    payload = data[off:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(payload) < need:
        raise GraphError(f"truncated graph6 payload: need {need} bytes, got {len(payload)}")
    if len(payload) > need:
        raise GraphError("trailing bytes after graph6 payload")
    for b in payload:
        if not 63 <= b <= 126:
            raise GraphError(f"invalid graph6 byte {b}")
    rows = [0] * n
    idx = 0
    for v in range(1, n):
        for u in range(v):
            byte = payload[idx // 6]
            if (byte - 63) >> (5 - idx % 6) & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            idx += 1
    return Graph(n, tuple(rows), label)


def iter_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    """Decode a stream of graph6 lines, skipping blanks and bare headers."""
    for i, line in enumerate(lines):
        s = line.strip()
        if not s or s == GRAPH6_HEADER:
            continue
        yield graph6_decode(s, label=f"g6[{i}]")


def read_graph6_file(path: str) -> list[Graph]:
    with open(path, "r", encoding="ascii") as fh:
        return list(iter_graph6_lines(fh))

"""Zero forcing on graphs: exact zero-forcing-set counting, random-set
probabilities, threshold solving, structural reductions, and verification
experiments."""

__version__ = "0.1.0"

from .graphs import (
    Graph,
    GraphError,
    complete,
    complete_multipartite,
    cycle,
    disjoint_union,
    empty_graph,
    family,
    graph6_decode,
    graph6_encode,
    grid,
    hypercube,
    join,
    left_complete_binary_tree,
    make_graph,
    path,
    read_graph6_file,
    triangle_with_path,
    wheel,
)
from .kernels import BACKEND

__all__ = [
    "BACKEND",
    "Graph",
    "GraphError",
    "__version__",
    "complete",
    "complete_multipartite",
    "cycle",
    "disjoint_union",
    "empty_graph",
    "family",
    "graph6_decode",
    "graph6_encode",
    "grid",
    "hypercube",
    "join",
    "left_complete_binary_tree",
    "make_graph",
    "path",
    "read_graph6_file",
    "triangle_with_path",
    "wheel",
]

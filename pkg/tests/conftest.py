import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from zfl import graphs
from zfl.polynomial import zf_polynomial_exact

CORPUS_PATH = Path(__file__).resolve().parent.parent / "src" / "zfl" / "data" / "connected_upto8.g6"


def random_graph(rng, n_lo=1, n_hi=9):
    import random as _random
    n = rng.randint(n_lo, n_hi)
    p = rng.random()
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return graphs.make_graph(n, edges)


@pytest.fixture(scope="session")
def corpus_path():
    assert CORPUS_PATH.exists(), "corpus data file missing"
    return str(CORPUS_PATH)


@pytest.fixture(scope="session")
def corpus_all(corpus_path):
    return graphs.read_graph6_file(corpus_path)


@pytest.fixture(scope="session")
def corpus_small(corpus_all):
    """Connected graphs on at most 6 vertices."""
    return [g for g in corpus_all if g.n <= 6]


@pytest.fixture(scope="session")
def corpus_polys(corpus_all):
    """Exact count vectors for every corpus graph, computed once."""
    return [(g, zf_polynomial_exact(g)) for g in corpus_all]

import numpy as np
import pytest

from hypermod import Hypergraph


def random_hypergraph(rng, n_max=100, weighted=False, max_degree=8):
    """Random valid hypergraph: mixed hyperedge degrees >= 2, optional weights."""
    n = int(rng.integers(4, n_max + 1))
    m = int(rng.integers(2, max(3, 2 * n)))
    top = min(n, max_degree)
    edges = [
        rng.choice(n, size=int(rng.integers(2, top + 1)), replace=False)
        for _ in range(m)
    ]
    weights = rng.uniform(0.5, 3.0, size=m) if weighted else None
    return Hypergraph(n, edges, weights)


def random_dyadic_hypergraph(rng, n_max=40, weighted=False):
    """Random hypergraph whose hyperedges all have exactly two nodes."""
    n = int(rng.integers(4, n_max + 1))
    m = int(rng.integers(n, 3 * n))
    edges = [rng.choice(n, size=2, replace=False) for _ in range(m)]
    weights = rng.uniform(0.5, 3.0, size=m) if weighted else None
    return Hypergraph(n, edges, weights)


@pytest.fixture(scope="session")
def mixed_corpus():
    """200 random hypergraphs (n <= 100), alternating unit and random weights."""
    rng = np.random.default_rng(20250808)
    return [random_hypergraph(rng, weighted=bool(i % 2)) for i in range(200)]

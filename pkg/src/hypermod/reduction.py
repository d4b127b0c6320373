"""Graph reductions of a hypergraph.

Two expansions are provided. The plain clique expansion gives every pair of
nodes inside a hyperedge the full hyperedge weight, which inflates node
degrees by a factor of (degree - 1) per hyperedge. The degree-preserving
expansion divides each hyperedge weight by (degree - 1) instead, so row sums
of the resulting adjacency equal the weighted hypergraph node degrees. The
associated random-walk transition matrix (pick an incident hyperedge
proportional to weight, then a different member uniformly) is exposed for
verification.

Both reductions are materialized as sparse matrices with a structurally
zero diagonal; clique expansion is combinatorial in hyperedge size, so a
dense copy is refused above ``DENSE_NODE_LIMIT`` nodes.
"""

from __future__ import annotations

from functools import cached_property
from pathlib import Path

import numpy as np
from scipy import sparse

from .hypergraph import Hypergraph, degrees

__all__ = [
    "DENSE_NODE_LIMIT",
    "ReducedGraph",
    "clique_reduce",
    "degree_preserving_reduce",
    "random_walk_matrix",
    "write_edge_list",
]

DENSE_NODE_LIMIT = 20_000


class ReducedGraph:
    """Symmetric weighted adjacency with cached degrees.

    ``node_degrees`` are exact row sums and ``total_weight_2m`` their total.
    Hypergraph reductions produce a zero diagonal; aggregated graphs built
    during optimization keep intra-cluster weight as self-loops.
    """

    def __init__(self, adjacency):
        adjacency = adjacency.tocsr()
        adjacency.sort_indices()
        self.adjacency = adjacency
        self.node_degrees = np.asarray(adjacency.sum(axis=1)).ravel()
        self.total_weight_2m = float(self.node_degrees.sum())

    @property
    def n(self):
        return self.adjacency.shape[0]

    @cached_property
    def self_loops(self):
        return self.adjacency.diagonal()

    def to_dense(self, limit: int = DENSE_NODE_LIMIT) -> np.ndarray:
        if self.n > limit:
            raise ValueError(
                f"refusing dense form for {self.n} nodes (limit {limit})"
            )
        return self.adjacency.toarray()

    def __repr__(self):
        return (
            f"ReducedGraph(n={self.n}, nnz={self.adjacency.nnz},"
            f" total_weight_2m={self.total_weight_2m:g})"
        )


def _expand(g: Hypergraph, edge_scale: np.ndarray):
    """H diag(edge_scale) H^T with the diagonal removed."""
    H = g.incidence()
    Hs = H.copy()
    Hs.data = Hs.data * edge_scale[Hs.indices]
    prod = (Hs @ H.T).tocsr()
    prod = (prod - sparse.diags(prod.diagonal())).tocsr()
    prod.eliminate_zeros()
    return prod


def clique_reduce(g: Hypergraph) -> ReducedGraph:
    """Clique expansion: every in-edge pair gets the hyperedge weight."""
    return ReducedGraph(_expand(g, g.weights))


def degree_preserving_reduce(g: Hypergraph) -> ReducedGraph:
    """Expansion scaled per hyperedge by 1/(degree - 1).

    Row sums of the result equal the weighted hypergraph node degrees
    (checked to 1e-9 relative). Requires every hyperedge to have at least
    two nodes, i.e. a preprocessed hypergraph.
    """
    delta = g.edge_degrees
    if int(delta.min()) < 2:
        raise ValueError(
            "degree-preserving reduction needs every hyperedge degree >= 2;"
            " run preprocess() first"
        )
    reduced = ReducedGraph(_expand(g, g.weights / (delta - 1.0)))
    expected = degrees(g).node_degrees
    if not np.allclose(reduced.node_degrees, expected, rtol=1e-9, atol=1e-12):
        raise RuntimeError(
            "row sums of the degree-preserving reduction drifted from the"
            " hypergraph node degrees"
        )
    return reduced


def random_walk_matrix(g: Hypergraph):
    """Row-stochastic transition matrix of the hypergraph random walk.

    Step from node i: choose an incident hyperedge proportional to weight,
    then one of its other members uniformly. Returns a CSR matrix whose
    rows sum to 1.
    """
    delta = g.edge_degrees
    if int(delta.min()) < 2:
        raise ValueError(
            "random walk needs every hyperedge degree >= 2; run preprocess() first"
        )
    d = degrees(g).node_degrees
    if np.any(d <= 0):
        raise ValueError("isolated node: every node must belong to a hyperedge")
    walk = _expand(g, g.weights / (delta - 1.0))
    rows = np.repeat(np.arange(g.n), np.diff(walk.indptr))
    walk.data = walk.data / d[rows]
    return walk


def write_edge_list(reduced: ReducedGraph, path) -> None:
    """Export the upper triangle as ``i j weight`` lines (0-based, i < j)."""
    upper = sparse.triu(reduced.adjacency, k=1).tocoo()
    order = np.lexsort((upper.col, upper.row))
    lines = [
        f"{upper.row[t]} {upper.col[t]} {float(upper.data[t])!r}" for t in order
    ]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")

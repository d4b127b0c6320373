"""
Degree-preserving reduction
===========================

A hyperedge over d nodes becomes a clique of d*(d-1)/2 pairs when a
hypergraph is flattened to a graph, so plain clique expansion inflates
every node degree by a factor of (d - 1) per incident hyperedge. Scaling
each hyperedge weight down by (d - 1) removes the inflation: the reduced
graph's row sums reproduce the weighted hypergraph degrees exactly, which
is what lets a configuration-model null model carry over to hypergraphs.
"""

import numpy as np

from hypermod import (
    Hypergraph,
    clique_reduce,
    degree_preserving_reduce,
    degrees,
    random_walk_matrix,
)

g = Hypergraph(4, [[0, 1, 2], [0, 1], [1, 2, 3]])
view = degrees(g)
print("hypergraph:", g)
print("node degrees d(v):        ", view.node_degrees)
print("hyperedge degrees delta(e):", view.edge_degrees)

clique = clique_reduce(g)
print("\nclique expansion A = H W H^T (diagonal removed):")
print(clique.to_dense())
print("row sums (inflated):", clique.node_degrees)

reduced = degree_preserving_reduce(g)
print("\ndegree-preserving expansion A = H W (D_e - I)^-1 H^T:")
print(reduced.to_dense())
print("row sums == d(v):", reduced.node_degrees)

# The same matrix, row-normalized, is the transition matrix of the
# natural hypergraph random walk: pick an incident hyperedge by weight,
# then a different member uniformly.
walk = random_walk_matrix(g)
print("\nrandom-walk transition matrix:")
print(walk.toarray().round(4))
print("row sums:", np.asarray(walk.sum(axis=1)).ravel())

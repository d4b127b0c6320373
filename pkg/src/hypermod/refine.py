"""Agglomerative post-processing to a requested cluster count.

Louvain chooses its own number of clusters; when a caller needs exactly k,
the discovered clusters are merged bottom-up. The similarity between two
clusters is the average linkage over all cross node pairs: total
inter-cluster edge weight divided by the product of the cluster sizes
(zero-weight pairs included). Splitting is not supported, so k must not
exceed the current cluster count.
"""

from __future__ import annotations

import numpy as np

from .louvain import aggregate
from .modularity import Partition
from .reduction import ReducedGraph

__all__ = ["agglomerate"]


def agglomerate(graph: ReducedGraph, partition: Partition, k: int) -> Partition:
    """Merge maximal-average-linkage cluster pairs until exactly k remain.

    Ties go to the lexicographically smallest pair of current cluster ids.
    The result refines ``partition`` only by unions of whole clusters and
    has dense ids.
    """
    k = int(k)
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > partition.c:
        raise ValueError(
            f"cannot split: requested {k} clusters but only {partition.c} exist"
        )
    if k == partition.c:
        return Partition(partition.assignment)

    # Cluster-level weights; the diagonal (intra weight) is never a merge
    # candidate and is masked out below.
    coarse = aggregate(graph, partition)
    weight = coarse.to_dense()
    sizes = partition.cluster_sizes.astype(np.float64).copy()
    alive = np.ones(partition.c, dtype=bool)
    parent = np.arange(partition.c)

    for _ in range(partition.c - k):
        linkage = weight / np.outer(sizes, sizes)
        np.fill_diagonal(linkage, -np.inf)
        linkage[~alive, :] = -np.inf
        linkage[:, ~alive] = -np.inf
        # Row-major argmax picks the lexicographically smallest (a, b) among
        # ties; restricting to a < b keeps merged clusters on the lower id.
        linkage[np.tril_indices_from(linkage)] = -np.inf
        a, b = np.unravel_index(int(np.argmax(linkage)), linkage.shape)
        weight[a, :] += weight[b, :]
        weight[:, a] += weight[:, b]
        sizes[a] += sizes[b]
        alive[b] = False
        parent[parent == b] = a

    return Partition.from_labels(parent[partition.assignment])

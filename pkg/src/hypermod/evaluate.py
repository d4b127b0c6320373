"""Clustering quality metrics and hyperedge-cut diagnostics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hypergraph import Hypergraph
from .modularity import Partition

__all__ = ["CutStats", "symmetric_f1", "cut_stats"]

HISTOGRAM_BINS = 10


def symmetric_f1(pred: Partition, truth: Partition) -> float:
    """Symmetric best-match F1 between two partitions of the same nodes.

    For each cluster on one side, take the F1 against its best-matching
    cluster on the other side (precision |P∩T|/|P|, recall |P∩T|/|T|);
    average these per side, unweighted, and return the mean of the two
    directions. 1.0 exactly when the partitions agree up to relabeling.
    """
    if len(pred) != len(truth):
        raise ValueError("partitions cover different node sets")
    cp, ct = pred.c, truth.c
    overlap = np.bincount(
        pred.assignment * ct + truth.assignment, minlength=cp * ct
    ).reshape(cp, ct)
    # 2pr/(p+r) collapses to 2|P∩T| / (|P|+|T|).
    denom = pred.cluster_sizes[:, None] + truth.cluster_sizes[None, :]
    f1 = 2.0 * overlap / denom
    forward = f1.max(axis=1).mean()
    backward = f1.max(axis=0).mean()
    return float((forward + backward) / 2.0)


@dataclass(frozen=True)
class CutStats:
    """How a partition cuts each hyperedge.

    ``partition_counts[e]`` holds the nonzero per-cluster node counts of
    hyperedge e (they sum to its degree). ``relative_sizes[e]`` is the
    largest count divided by the degree, in (0, 1]; 1.0 means uncut.
    ``histogram`` gives the fraction of hyperedges per relative-size bin
    (0.0, 0.1], (0.1, 0.2], ..., (0.9, 1.0].
    """

    partition_counts: list[np.ndarray]
    relative_sizes: np.ndarray
    histogram: np.ndarray


def cut_stats(g: Hypergraph, partition: Partition) -> CutStats:
    """Per-hyperedge cut counts and the relative-size histogram."""
    if len(partition) != g.n:
        raise ValueError("partition does not cover the hypergraph's nodes")
    counts_per_edge = []
    bins = np.empty(g.m, dtype=np.int64)
    rel = np.empty(g.m)
    for j, edge in enumerate(g.edges):
        _, counts = np.unique(partition.assignment[edge], return_counts=True)
        counts_per_edge.append(counts)
        top = int(counts.max())
        delta = edge.size
        rel[j] = top / delta
        # Right-inclusive binning done in integers so exact boundaries such
        # as 9/10 land in (0.8, 0.9] despite floating-point rounding.
        bins[j] = -(-10 * top // delta) - 1
    hist = np.bincount(bins, minlength=HISTOGRAM_BINS) / g.m
    return CutStats(counts_per_edge, rel, hist)

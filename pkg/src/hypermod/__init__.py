"""Hypergraph clustering by modularity maximization.

Builds a degree-preserving graph reduction of a weighted hypergraph (row
sums equal hypergraph node degrees), maximizes the induced modularity with
the Louvain method, and optionally refines the result by iteratively
reweighting hyperedges according to how balanced their cuts are.
"""

from .evaluate import CutStats, cut_stats, symmetric_f1
from .hypergraph import (
    DegreeView,
    FormatError,
    Hypergraph,
    degrees,
    load,
    load_labels,
    loads,
    preprocess,
    write_hmetis,
    write_labels,
)
from .irmm import (
    IrmmConfig,
    IrmmIteration,
    IrmmResult,
    WeightState,
    irmm,
    reweight,
    two_way_cut_score,
    update_weights,
    write_trace,
)
from .louvain import (
    Dendrogram,
    LouvainConfig,
    LouvainResult,
    aggregate,
    flatten,
    louvain,
)
from .modularity import (
    ModularityContext,
    Partition,
    gain_of_move,
    modularity,
    null_model_entry,
    same_clustering,
)
from .reduction import (
    DENSE_NODE_LIMIT,
    ReducedGraph,
    clique_reduce,
    degree_preserving_reduce,
    random_walk_matrix,
    write_edge_list,
)
from .refine import agglomerate
from .synthgen import GenConfig, default_size_buckets, generate

__version__ = "0.1.0"

__all__ = [
    "CutStats",
    "DegreeView",
    "Dendrogram",
    "DENSE_NODE_LIMIT",
    "FormatError",
    "GenConfig",
    "Hypergraph",
    "IrmmConfig",
    "IrmmIteration",
    "IrmmResult",
    "LouvainConfig",
    "LouvainResult",
    "ModularityContext",
    "Partition",
    "ReducedGraph",
    "WeightState",
    "agglomerate",
    "aggregate",
    "clique_reduce",
    "cut_stats",
    "default_size_buckets",
    "degree_preserving_reduce",
    "degrees",
    "flatten",
    "gain_of_move",
    "generate",
    "irmm",
    "load",
    "load_labels",
    "loads",
    "louvain",
    "modularity",
    "null_model_entry",
    "preprocess",
    "random_walk_matrix",
    "reweight",
    "same_clustering",
    "symmetric_f1",
    "two_way_cut_score",
    "update_weights",
    "write_edge_list",
    "write_hmetis",
    "write_labels",
    "write_trace",
]

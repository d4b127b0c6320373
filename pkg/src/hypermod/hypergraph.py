"""Hypergraph container, hMETIS-style file I/O, and preprocessing.

A hypergraph is stored as a list of hyperedges (sorted arrays of distinct
0-based node indices) plus a strictly positive weight per hyperedge. The
file format is the hMETIS convention: a header line ``m n [fmt]`` followed
by one line per hyperedge with 1-based node indices, where ``fmt`` of ``1``
means each line starts with a hyperedge weight. Lines beginning with ``%``
are comments.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np
from scipy import sparse

logger = logging.getLogger(__name__)

__all__ = [
    "FormatError",
    "Hypergraph",
    "DegreeView",
    "load",
    "loads",
    "write_hmetis",
    "load_labels",
    "write_labels",
    "preprocess",
    "degrees",
]


class FormatError(ValueError):
    """A hypergraph or label file could not be parsed."""


class Hypergraph:
    """Weighted hypergraph over nodes ``0 .. n-1``.

    Duplicate node mentions within a hyperedge are dropped silently, so a
    hyperedge's degree is the number of distinct nodes it contains.
    ``node_labels`` optionally records external identifiers (1-based file
    indices for loaded graphs); it is carried through preprocessing so
    results can be reported against the original numbering.

    Instances are immutable by convention and safe to share between threads.
    """

    def __init__(self, n, edges, weights=None, node_labels=None):
        n = int(n)
        if n < 1:
            raise ValueError("node count must be at least 1")
        parsed = []
        for idx, edge in enumerate(edges):
            nodes = np.unique(np.asarray(edge, dtype=np.int64))
            if nodes.size == 0:
                raise ValueError(f"hyperedge {idx} has no nodes")
            if nodes[0] < 0 or nodes[-1] >= n:
                raise ValueError(
                    f"hyperedge {idx} has a node index outside [0, {n})"
                )
            parsed.append(nodes)
        if not parsed:
            raise ValueError("hypergraph must have at least one hyperedge")

        if weights is None:
            w = np.ones(len(parsed))
        else:
            w = np.asarray(weights, dtype=np.float64).copy()
            if w.shape != (len(parsed),):
                raise ValueError("need exactly one weight per hyperedge")
            if not np.all(np.isfinite(w)) or np.any(w <= 0):
                raise ValueError("hyperedge weights must be finite and positive")

        if node_labels is not None:
            node_labels = np.asarray(node_labels, dtype=np.int64).copy()
            if node_labels.shape != (n,):
                raise ValueError("need exactly one label per node")

        self.n = n
        self.m = len(parsed)
        self.edges = tuple(parsed)
        self.weights = w
        self.node_labels = node_labels

    @cached_property
    def edge_degrees(self):
        """Number of distinct nodes per hyperedge."""
        return np.array([e.size for e in self.edges], dtype=np.int64)

    @cached_property
    def _incidence(self):
        row = np.concatenate(self.edges)
        col = np.repeat(np.arange(self.m), self.edge_degrees)
        mat = sparse.csr_matrix(
            (np.ones(row.size), (row, col)), shape=(self.n, self.m)
        )
        mat.sort_indices()
        return mat

    def incidence(self):
        """Node-by-hyperedge membership matrix (CSR, float 0/1)."""
        return self._incidence

    def with_weights(self, weights):
        """Copy of this hypergraph with a new weight vector."""
        return Hypergraph(self.n, self.edges, weights, self.node_labels)

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        if self.n != other.n or self.m != other.m:
            return False
        if not np.array_equal(self.weights, other.weights):
            return False
        if (self.node_labels is None) != (other.node_labels is None):
            return False
        if self.node_labels is not None and not np.array_equal(
            self.node_labels, other.node_labels
        ):
            return False
        return all(np.array_equal(a, b) for a, b in zip(self.edges, other.edges))

    def __repr__(self):
        return f"Hypergraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class DegreeView:
    """Weighted node degrees and hyperedge degrees of a hypergraph.

    ``node_degrees[v]`` is the sum of weights of hyperedges containing v,
    ``edge_degrees[e]`` the number of distinct nodes in hyperedge e, and
    ``total_degree`` the sum of all node degrees (equal to the degree-weighted
    sum of hyperedge weights).
    """

    node_degrees: np.ndarray
    edge_degrees: np.ndarray
    total_degree: float


def degrees(g: Hypergraph) -> DegreeView:
    """Compute weighted node degrees and integer hyperedge degrees."""
    d = g.incidence() @ g.weights
    return DegreeView(d, g.edge_degrees.copy(), float(d.sum()))


def _tokenize(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        yield lineno, line.split()


def _parse_hmetis(text):
    rows = _tokenize(text)
    try:
        lineno, header = next(rows)
    except StopIteration:
        raise FormatError("empty file: missing header line") from None

    if len(header) not in (2, 3):
        raise FormatError(f"line {lineno}: header must be 'm n [fmt]'")
    try:
        m, n = int(header[0]), int(header[1])
    except ValueError:
        raise FormatError(f"line {lineno}: header must contain integers") from None
    fmt = header[2] if len(header) == 3 else "0"
    if fmt not in ("0", "1"):
        raise FormatError(f"line {lineno}: unsupported fmt code {fmt!r}")
    if m < 1 or n < 1:
        raise FormatError(f"line {lineno}: m and n must be positive")
    weighted = fmt == "1"

    edges = []
    weights = np.ones(m)
    for lineno, tokens in rows:
        if len(edges) == m:
            raise FormatError(f"line {lineno}: more than {m} hyperedge lines")
        if weighted:
            try:
                w = float(tokens[0])
            except ValueError:
                raise FormatError(
                    f"line {lineno}: expected a hyperedge weight first"
                ) from None
            if not np.isfinite(w) or w <= 0:
                raise FormatError(f"line {lineno}: weight must be positive")
            weights[len(edges)] = w
            tokens = tokens[1:]
        try:
            nodes = [int(t) for t in tokens]
        except ValueError:
            raise FormatError(f"line {lineno}: node indices must be integers") from None
        if not nodes:
            raise FormatError(f"line {lineno}: hyperedge has no nodes")
        for v in nodes:
            if not 1 <= v <= n:
                raise FormatError(
                    f"line {lineno}: node index {v} outside [1, {n}]"
                )
        edges.append(np.asarray(nodes, dtype=np.int64) - 1)

    if len(edges) != m:
        raise FormatError(f"expected {m} hyperedge lines, found {len(edges)}")
    return Hypergraph(n, edges, weights, node_labels=np.arange(1, n + 1))


def loads(text: str, format: str = "hmetis") -> Hypergraph:
    """Parse a hypergraph from a string in the given format."""
    if format != "hmetis":
        raise ValueError(f"unknown format {format!r}")
    return _parse_hmetis(text)


def load(path, format: str = "hmetis") -> Hypergraph:
    """Read a hypergraph file. See the module docstring for the format."""
    return loads(Path(path).read_text(encoding="utf-8"), format=format)


def write_hmetis(g: Hypergraph, path) -> None:
    """Write a hypergraph in hMETIS format with nodes renumbered 1..n.

    The weighted variant (fmt code 1) is used only when some weight
    differs from 1.
    """
    weighted = bool(np.any(g.weights != 1.0))
    lines = [f"{g.m} {g.n} 1" if weighted else f"{g.m} {g.n}"]
    for e, w in zip(g.edges, g.weights):
        nodes = " ".join(str(v + 1) for v in e)
        lines.append(f"{float(w)!r} {nodes}" if weighted else nodes)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_labels(path) -> np.ndarray:
    """Read a ground-truth label file: one integer class label per line."""
    labels = []
    for lineno, tokens in _tokenize(Path(path).read_text(encoding="utf-8")):
        if len(tokens) != 1:
            raise FormatError(f"line {lineno}: expected one label per line")
        try:
            labels.append(int(tokens[0]))
        except ValueError:
            raise FormatError(f"line {lineno}: labels must be integers") from None
    if not labels:
        raise FormatError("empty label file")
    return np.asarray(labels, dtype=np.int64)


def write_labels(labels, path) -> None:
    """Write one integer label per line (line i = node i)."""
    labels = np.asarray(labels, dtype=np.int64)
    Path(path).write_text(
        "\n".join(str(v) for v in labels) + "\n", encoding="utf-8"
    )


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]


def preprocess(g: Hypergraph) -> Hypergraph:
    """Drop singleton hyperedges and keep the largest connected component.

    Nodes are connected when they share a hyperedge. Ties between equally
    large components go to the one containing the lowest node index. Node
    indices are compacted; prior identifiers (or, failing that, the current
    indices) are preserved in ``node_labels``.

    Raises ValueError if no hyperedge with at least two nodes remains.
    """
    keep = [i for i, e in enumerate(g.edges) if e.size >= 2]
    dropped = g.m - len(keep)
    if dropped:
        logger.warning("preprocess: dropped %d singleton hyperedge(s)", dropped)
    if not keep:
        raise ValueError("hypergraph is empty after removing singleton hyperedges")

    uf = _UnionFind(g.n)
    for i in keep:
        e = g.edges[i]
        first = int(e[0])
        for v in e[1:]:
            uf.union(first, int(v))

    members: dict[int, list[int]] = {}
    for i in keep:
        for v in g.edges[i]:
            members.setdefault(uf.find(int(v)), [])
    for v in range(g.n):
        root = uf.find(v)
        if root in members:
            members[root].append(v)

    # Largest component; ties go to the lowest contained node index.
    best_root = min(members, key=lambda r: (-len(members[r]), members[r][0]))
    kept_nodes = np.asarray(members[best_root], dtype=np.int64)

    remap = np.full(g.n, -1, dtype=np.int64)
    remap[kept_nodes] = np.arange(kept_nodes.size)

    edges = []
    weights = []
    for i in keep:
        e = g.edges[i]
        if remap[e[0]] >= 0:
            edges.append(remap[e])
            weights.append(g.weights[i])
    old_labels = g.node_labels if g.node_labels is not None else np.arange(g.n)
    return Hypergraph(
        kept_nodes.size, edges, np.asarray(weights), old_labels[kept_nodes]
    )

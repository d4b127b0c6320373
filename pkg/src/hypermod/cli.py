"""Command-line interface.

Subcommands: ``cluster`` (clique-louvain / hlouvain / irmm on an
hMETIS-style file), ``eval`` (symmetric F1 between two clusterings),
``generate`` (synthetic benchmark hypergraphs), ``stats`` (hyperedge-cut
histogram of a partition) and ``bench`` (CPU-time scaling of hlouvain on
synthetic inputs). All randomness flows from ``--seed``; runs with
identical flags write byte-identical artifacts.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .evaluate import cut_stats, symmetric_f1
from .hypergraph import (
    FormatError,
    load,
    load_labels,
    preprocess,
    write_hmetis,
    write_labels,
)
from .irmm import IrmmConfig, irmm, write_trace
from .louvain import LouvainConfig, louvain
from .modularity import Partition, modularity
from .reduction import clique_reduce, degree_preserving_reduce
from .refine import agglomerate
from .synthgen import GenConfig, generate

__all__ = ["main"]

METHODS = ("irmm", "hlouvain", "clique-louvain")


@dataclass
class MethodRun:
    partition: Partition
    num_clusters: int
    modularity: float
    iterations: int
    converged: bool
    graph: object
    trace: list


def run_method(g, method, louvain_cfg, irmm_cfg) -> MethodRun:
    """Cluster a preprocessed hypergraph with one of the three methods."""
    if method == "irmm":
        res = irmm(g, irmm_cfg)
        return MethodRun(
            res.partition,
            res.num_clusters,
            res.modularity,
            res.iterations,
            res.converged,
            res.graph,
            res.trace,
        )
    if method == "hlouvain":
        reduced = degree_preserving_reduce(g)
    elif method == "clique-louvain":
        reduced = clique_reduce(g)
    else:
        raise ValueError(f"unknown method {method!r}")
    res = louvain(reduced, louvain_cfg)
    return MethodRun(
        res.partition, res.num_clusters, res.modularity, 1, True, reduced, []
    )


def _write_partition(path, node_labels, assignment):
    lines = [
        f"{label}\t{cluster}" for label, cluster in zip(node_labels, assignment)
    ]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _write_json(path, payload):
    Path(path).write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def _truth_for(g, labels_all):
    """Ground-truth partition restricted to the retained (labeled) nodes."""
    ids = g.node_labels
    if ids.min() < 1 or ids.max() > labels_all.size:
        raise ValueError(
            "label file is shorter than the hypergraph's node numbering"
        )
    return Partition.from_labels(labels_all[ids - 1])


def cmd_cluster(args) -> int:
    g = preprocess(load(args.input))
    louvain_cfg = LouvainConfig(seed=args.seed, shuffle=args.shuffle)
    irmm_cfg = IrmmConfig(
        alpha=args.alpha,
        threshold=args.threshold,
        max_iters=args.max_iters,
        louvain=louvain_cfg,
    )
    if args.trace_out and args.method != "irmm":
        raise ValueError("--trace-out is only meaningful with --method irmm")

    run = run_method(g, args.method, louvain_cfg, irmm_cfg)
    partition = run.partition
    q = run.modularity
    if args.k is not None:
        partition = agglomerate(run.graph, partition, args.k)
        q = modularity(run.graph, partition)

    f1 = None
    if args.truth:
        f1 = symmetric_f1(partition, _truth_for(g, load_labels(args.truth)))

    stem = Path(args.input)
    partition_out = args.partition_out or stem.with_suffix(".partition.tsv")
    metrics_out = args.metrics_out or stem.with_suffix(".metrics.json")
    _write_partition(partition_out, g.node_labels, partition.assignment)
    metrics = {
        "f1": f1,
        "num_clusters": partition.c,
        "modularity": q,
        "histogram": cut_stats(g, partition).histogram.tolist(),
        "iterations": run.iterations,
        "converged": run.converged,
        "method": args.method,
        "seed": args.seed,
    }
    _write_json(metrics_out, metrics)
    if args.trace_out:
        write_trace(run.trace, args.trace_out)
    print(
        f"{args.method}: {partition.c} clusters, modularity {q:.6f},"
        f" {run.iterations} iteration(s) -> {partition_out}"
    )
    return 0


def _read_clustering(path):
    """Read either a `node<TAB>cluster` file or a label-per-line file.

    Returns a dict from node id to cluster label; label-per-line files
    number their nodes 1..n.
    """
    rows = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        tokens = line.split()
        if len(tokens) not in (1, 2):
            raise FormatError(f"{path}: line {lineno}: expected 1 or 2 columns")
        rows.append((lineno, tokens))
    if not rows:
        raise FormatError(f"{path}: no clustering rows")
    widths = {len(tokens) for _, tokens in rows}
    if len(widths) != 1:
        raise FormatError(f"{path}: mixed 1- and 2-column lines")
    mapping = {}
    try:
        if widths == {1}:
            for i, (_, tokens) in enumerate(rows, start=1):
                mapping[i] = int(tokens[0])
        else:
            for lineno, tokens in rows:
                node = int(tokens[0])
                if node in mapping:
                    raise FormatError(f"{path}: line {lineno}: duplicate node {node}")
                mapping[node] = int(tokens[1])
    except ValueError:
        raise FormatError(f"{path}: entries must be integers") from None
    return mapping


def _aligned_partitions(map_a, map_b):
    nodes_a, nodes_b = set(map_a), set(map_b)
    if nodes_a <= nodes_b:
        common = sorted(nodes_a)
    elif nodes_b <= nodes_a:
        common = sorted(nodes_b)
    else:
        raise ValueError(
            "node sets do not align: neither clustering covers the other"
        )
    part_a = Partition.from_labels([map_a[v] for v in common])
    part_b = Partition.from_labels([map_b[v] for v in common])
    return part_a, part_b, len(common)


def cmd_eval(args) -> int:
    pred, truth, nodes = _aligned_partitions(
        _read_clustering(args.pred), _read_clustering(args.truth)
    )
    payload = {
        "f1": symmetric_f1(pred, truth),
        "pred_clusters": pred.c,
        "truth_clusters": truth.c,
        "nodes": nodes,
    }
    print(json.dumps(payload, indent=2, sort_keys=True))
    if args.output:
        _write_json(args.output, payload)
    return 0


def cmd_generate(args) -> int:
    cfg = GenConfig(
        n=args.nodes,
        classes=args.classes,
        homophily_deviation=args.homophily_deviation,
        edge_factor=args.edge_factor,
        seed=args.seed,
    )
    g, truth = generate(cfg)
    output = args.output or f"synth_{args.nodes}.hgr"
    labels_out = args.labels_out or str(Path(output).with_suffix(".labels"))
    write_hmetis(g, output)
    write_labels(truth.assignment, labels_out)
    print(f"wrote {g.m} hyperedges over {g.n} nodes -> {output}, {labels_out}")
    return 0


def cmd_stats(args) -> int:
    g = preprocess(load(args.input))
    mapping = _read_clustering(args.partition)
    try:
        labels = [mapping[int(v)] for v in g.node_labels]
    except KeyError as exc:
        raise ValueError(f"partition file does not cover node {exc}") from None
    stats = cut_stats(g, Partition.from_labels(labels))
    header = "\t".join(
        f"({i / 10:.1f},{(i + 1) / 10:.1f}]" for i in range(10)
    )
    row = "\t".join(repr(v) for v in stats.histogram.tolist())
    out = f"{header}\n{row}\n"
    print(out, end="")
    if args.output:
        Path(args.output).write_text(out, encoding="utf-8")
    return 0


def bench_sizes(min_n, max_n, step):
    if min_n < 10 or step < 1 or max_n < min_n:
        raise ValueError("invalid bench range")
    return list(range(min_n, max_n + 1, step))


def bench_run(sizes, seed, shuffle=False):
    """Generate, preprocess and cluster one hypergraph per size.

    Returns (n, cpu_seconds) pairs where the time covers the hlouvain
    method itself: the degree-preserving reduction plus Louvain.
    """
    rows = []
    for n in sizes:
        g, _ = generate(GenConfig(n=n, seed=seed))
        g = preprocess(g)
        start = time.process_time()
        louvain(degree_preserving_reduce(g), LouvainConfig(seed=seed, shuffle=shuffle))
        elapsed = time.process_time() - start
        rows.append((n, elapsed))
        print(f"n={n}: {elapsed:.3f}s cpu", file=sys.stderr)
    return rows


def cmd_bench(args) -> int:
    rows = bench_run(bench_sizes(args.min, args.max, args.step), args.seed)
    lines = ["n\tcpu_seconds"] + [f"{n}\t{t!r}" for n, t in rows]
    Path(args.output).write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(rows)} timings -> {args.output}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hypermod",
        description="Hypergraph clustering by modularity maximization.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cluster", help="cluster a hypergraph file")
    p.add_argument("--input", required=True, help="hMETIS-style hypergraph file")
    p.add_argument("--method", choices=METHODS, default="irmm")
    p.add_argument("--alpha", type=float, default=0.5,
                   help="moving-average coefficient for irmm")
    p.add_argument("--threshold", type=float, default=0.01,
                   help="stopping threshold on the weight change")
    p.add_argument("--max-iters", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--shuffle", action="store_true",
                   help="visit nodes in seeded random order")
    p.add_argument("--k", type=int, default=None,
                   help="merge the result down to exactly k clusters")
    p.add_argument("--truth", default=None, help="label file for an F1 score")
    p.add_argument("--partition-out", default=None)
    p.add_argument("--metrics-out", default=None)
    p.add_argument("--trace-out", default=None,
                   help="per-iteration TSV (irmm only)")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("eval", help="symmetric F1 between two clusterings")
    p.add_argument("--pred", required=True)
    p.add_argument("--truth", required=True)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("generate", help="write a synthetic hypergraph")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--classes", type=int, default=2)
    p.add_argument("--homophily-deviation", type=float, default=0.4)
    p.add_argument("--edge-factor", type=float, default=1.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default=None)
    p.add_argument("--labels-out", default=None)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("stats", help="hyperedge-cut histogram of a partition")
    p.add_argument("--input", required=True)
    p.add_argument("--partition", required=True)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bench", help="CPU-time scaling of hlouvain")
    p.add_argument("--min", type=int, default=1000)
    p.add_argument("--max", type=int, default=10000)
    p.add_argument("--step", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default="bench.tsv")
    p.set_defaults(func=cmd_bench)

    return parser


def _cap_threads():
    threads = os.environ.get("HYPERMOD_THREADS")
    if threads:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, threads)


def main(argv=None) -> int:
    _cap_threads()
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())

import numpy as np
import pytest

from hypermod import (
    Hypergraph,
    clique_reduce,
    degree_preserving_reduce,
    degrees,
    random_walk_matrix,
    write_edge_list,
)

from conftest import random_dyadic_hypergraph, random_hypergraph
from oracles import clique_degree_by_hand


class TestCliqueReduce:
    def test_dyadic_edge(self):
        g = Hypergraph(2, [[0, 1]])
        assert np.array_equal(clique_reduce(g).to_dense(), [[0, 1], [1, 0]])

    def test_two_edges_direct_summation(self):
        g = Hypergraph(3, [[0, 1, 2], [0, 1]])
        rg = clique_reduce(g)
        A = rg.to_dense()
        assert A[0, 1] == 2.0
        assert A[0, 2] == 1.0
        assert A[1, 2] == 1.0
        # Row sum of node 0: 1*2 + 1*1 over its two hyperedges.
        assert rg.node_degrees[0] == 3.0

    def test_row_sums_match_per_edge_overcount(self, mixed_corpus):
        for g in mixed_corpus[:40]:
            rg = clique_reduce(g)
            expected = [clique_degree_by_hand(g, v) for v in range(g.n)]
            assert np.allclose(rg.node_degrees, expected, rtol=1e-9, atol=1e-12)


class TestDegreePreservingReduce:
    def test_single_triangle_edge(self):
        g = Hypergraph(3, [[0, 1, 2]])
        rg = degree_preserving_reduce(g)
        A = rg.to_dense()
        off = A[~np.eye(3, dtype=bool)]
        assert np.all(off == 0.5)
        assert np.array_equal(rg.node_degrees, [1.0, 1.0, 1.0])

    def test_two_edges_by_hand(self):
        g = Hypergraph(3, [[0, 1, 2], [0, 1]])
        rg = degree_preserving_reduce(g)
        A = rg.to_dense()
        assert A[0, 1] == 1.5
        assert A[0, 2] == 0.5
        assert A[1, 2] == 0.5
        assert rg.node_degrees[0] == 2.0 == degrees(g).node_degrees[0]

    def test_dyadic_equals_clique(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            g = random_dyadic_hypergraph(rng, weighted=True)
            a = degree_preserving_reduce(g).to_dense()
            b = clique_reduce(g).to_dense()
            assert np.array_equal(a, b)

    def test_row_sums_equal_node_degrees(self, mixed_corpus):
        for g in mixed_corpus[:40]:
            rg = degree_preserving_reduce(g)
            assert np.allclose(
                rg.node_degrees, degrees(g).node_degrees, rtol=1e-9, atol=1e-12
            )

    def test_rejects_singleton_hyperedge(self):
        g = Hypergraph(3, [[0, 1], [2]])
        with pytest.raises(ValueError, match="preprocess"):
            degree_preserving_reduce(g)


class TestStructure:
    def test_symmetry_and_zero_diagonal(self, mixed_corpus):
        for g in mixed_corpus[:20]:
            for rg in (clique_reduce(g), degree_preserving_reduce(g)):
                A = rg.adjacency
                assert (A != A.T).nnz == 0
                assert np.all(A.diagonal() == 0.0)
                assert np.all(A.data > 0)

    def test_weight_scaling_by_power_of_two_is_exact(self):
        rng = np.random.default_rng(9)
        g = random_hypergraph(rng, n_max=30, weighted=True)
        for reduce_fn in (clique_reduce, degree_preserving_reduce):
            base = reduce_fn(g).to_dense()
            scaled = reduce_fn(g.with_weights(4.0 * g.weights)).to_dense()
            assert np.array_equal(scaled, 4.0 * base)

    def test_weight_scaling_general_lambda(self):
        rng = np.random.default_rng(10)
        g = random_hypergraph(rng, n_max=30, weighted=True)
        lam = 1.7
        base = degree_preserving_reduce(g).to_dense()
        scaled = degree_preserving_reduce(g.with_weights(lam * g.weights)).to_dense()
        assert np.allclose(scaled, lam * base, rtol=1e-14)

    def test_dense_guard(self):
        g = Hypergraph(3, [[0, 1, 2]])
        rg = degree_preserving_reduce(g)
        with pytest.raises(ValueError, match="dense"):
            rg.to_dense(limit=2)


class TestRandomWalk:
    def test_forced_transition(self):
        g = Hypergraph(2, [[0, 1]])
        assert np.array_equal(random_walk_matrix(g).toarray(), [[0, 1], [1, 0]])

    def test_uniform_choice_in_triangle(self):
        g = Hypergraph(3, [[0, 1, 2]])
        P = random_walk_matrix(g).toarray()
        assert np.all(P[~np.eye(3, dtype=bool)] == 0.5)
        assert np.all(P.diagonal() == 0.0)

    def test_rows_sum_to_one(self):
        rng = np.random.default_rng(30)
        for _ in range(20):
            g = random_hypergraph(rng, n_max=30, weighted=True)
            # Every node must touch an edge for the walk to be defined.
            missing = np.setdiff1d(np.arange(g.n), np.concatenate(g.edges))
            if missing.size:
                continue
            sums = np.asarray(random_walk_matrix(g).sum(axis=1)).ravel()
            assert np.allclose(sums, 1.0, rtol=0, atol=1e-9)

    def test_isolated_node_rejected(self):
        g = Hypergraph(3, [[0, 1]])
        with pytest.raises(ValueError, match="isolated"):
            random_walk_matrix(g)


class TestEdgeListExport:
    def test_format_and_order(self, tmp_path):
        g = Hypergraph(3, [[0, 1, 2], [0, 1]])
        path = tmp_path / "edges.txt"
        write_edge_list(degree_preserving_reduce(g), path)
        assert path.read_text().splitlines() == [
            "0 1 1.5",
            "0 2 0.5",
            "1 2 0.5",
        ]

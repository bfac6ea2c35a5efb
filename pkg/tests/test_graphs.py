"""Centrality implementations against dense brute-force oracles."""

import numpy as np
import pytest

from keyness.corpus import Document
from keyness.errors import ConvergenceError
from keyness.graphs import (Graph, betweenness_centrality, build_term_graph,
                            build_topic_graph, closeness_centrality,
                            eigenvector_centrality, pagerank)

from oracles import (betweenness_brute, closeness_brute, eigenvector_dense,
                     pagerank_linear_solve, random_graph)


# ---------------------------------------------------------------------------
# Oracle comparisons
# ---------------------------------------------------------------------------

class TestPageRankOracle:
    @pytest.mark.parametrize("seed", range(40))
    def test_random_graphs_match_linear_solve(self, seed):
        rng = np.random.default_rng(seed)
        graph = random_graph(rng)
        seeds = rng.uniform(0, 1, size=graph.size) if seed % 2 else None
        mine = pagerank(graph, personalization=seeds)
        oracle = pagerank_linear_solve(graph, personalization=seeds)
        np.testing.assert_allclose(mine, oracle, atol=1e-6)
        assert mine.sum() == pytest.approx(1.0, abs=1e-9)

    def test_complete_graph_uniform(self):
        adj = np.ones((3, 3)) - np.eye(3)
        graph = Graph(vertices=[0, 1, 2], adjacency=adj)
        np.testing.assert_allclose(pagerank(graph), np.full(3, 1 / 3), atol=1e-9)

    def test_path_center_highest(self):
        adj = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=float)
        scores = pagerank(Graph(vertices=list("abc"), adjacency=adj))
        assert scores[1] > scores[0] and scores[1] > scores[2]
        np.testing.assert_allclose(
            scores, pagerank_linear_solve(Graph(list("abc"), adj)), atol=1e-8)

    def test_seed_mass_on_disconnected_vertex(self):
        adj = np.zeros((2, 2))
        graph = Graph(vertices=["a", "b"], adjacency=adj)
        scores = pagerank(graph, personalization=np.array([1.0, 0.0]))
        assert scores[0] > scores[1]

    def test_non_convergence_carries_residual(self):
        adj = np.array([[0, 1], [1, 0]], dtype=float)
        with pytest.raises(ConvergenceError) as err:
            pagerank(Graph(vertices=[0, 1], adjacency=adj), max_iter=0)
        assert err.value.residual is None or err.value.residual >= 0


class TestEigenvectorOracle:
    @pytest.mark.parametrize("seed", range(40))
    def test_random_graphs_match_dense_solve(self, seed):
        rng = np.random.default_rng(100 + seed)
        graph = random_graph(rng)
        mine = eigenvector_centrality(graph)
        oracle = eigenvector_dense(graph)
        np.testing.assert_allclose(mine, oracle, atol=1e-6)

    def test_no_edges_all_zero(self):
        graph = Graph(vertices=[0, 1], adjacency=np.zeros((2, 2)))
        np.testing.assert_array_equal(eigenvector_centrality(graph), np.zeros(2))

    def test_star_is_bipartite_but_converges(self):
        n = 5
        adj = np.zeros((n, n))
        adj[0, 1:] = adj[1:, 0] = 1.0
        mine = eigenvector_centrality(Graph(vertices=list(range(n)), adjacency=adj))
        np.testing.assert_allclose(mine, eigenvector_dense(
            Graph(list(range(n)), adj)), atol=1e-6)


class TestClosenessOracle:
    @pytest.mark.parametrize("seed", range(40))
    def test_random_graphs(self, seed):
        rng = np.random.default_rng(200 + seed)
        graph = random_graph(rng)
        np.testing.assert_allclose(closeness_centrality(graph),
                                   closeness_brute(graph), atol=1e-9)

    def test_star_center_max_leaves_tie(self):
        n = 5
        adj = np.zeros((n, n))
        adj[0, 1:] = adj[1:, 0] = 1.0
        scores = closeness_centrality(Graph(vertices=list(range(n)), adjacency=adj))
        assert scores[0] == max(scores)
        assert len({round(s, 12) for s in scores[1:]}) == 1


class TestBetweennessOracle:
    @pytest.mark.parametrize("seed", range(25))
    def test_random_graphs_match_path_enumeration(self, seed):
        rng = np.random.default_rng(300 + seed)
        graph = random_graph(rng, max_vertices=9)
        np.testing.assert_allclose(betweenness_centrality(graph),
                                   betweenness_brute(graph), atol=1e-9)

    def test_triangle_all_zero(self):
        adj = np.ones((3, 3)) - np.eye(3)
        np.testing.assert_array_equal(
            betweenness_centrality(Graph(vertices=[0, 1, 2], adjacency=adj)),
            np.zeros(3))

    def test_path_midpoint_is_one(self):
        adj = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=float)
        scores = betweenness_centrality(Graph(vertices=[0, 1, 2], adjacency=adj))
        assert scores[1] == pytest.approx(1.0, abs=1e-12)

    def test_star_center_max(self):
        n = 5
        adj = np.zeros((n, n))
        adj[0, 1:] = adj[1:, 0] = 1.0
        scores = betweenness_centrality(Graph(vertices=list(range(n)), adjacency=adj))
        assert scores[0] == pytest.approx(1.0, abs=1e-12)
        assert np.allclose(scores[1:], 0.0)


# ---------------------------------------------------------------------------
# Graph builders
# ---------------------------------------------------------------------------

class FakeTerm:
    def __init__(self, key, sentence_ids):
        self.key = key
        self.occurrences = [(s, 0) for s in sentence_ids]


class FakeGroup:
    def __init__(self, members):
        self.members = members


class TestGraphBuilders:
    def test_shared_sentences_weight(self):
        doc = Document(id="d", sublanguage="unknown", sentences=[[], [], []])
        a, b = FakeTerm("a", [0, 1]), FakeTerm("b", [0, 1, 2])
        graph = build_term_graph(doc, [a, b])
        assert graph.adjacency[0, 1] == 2.0
        assert graph.adjacency[1, 0] == 2.0

    def test_never_co_sentential_no_edge(self):
        doc = Document(id="d", sublanguage="unknown", sentences=[[], []])
        graph = build_term_graph(doc, [FakeTerm("a", [0]), FakeTerm("b", [1])])
        assert not graph.adjacency.any()

    def test_triangle_from_one_sentence(self):
        doc = Document(id="d", sublanguage="unknown", sentences=[[]])
        graph = build_term_graph(doc, [FakeTerm(k, [0]) for k in "abc"])
        assert (graph.adjacency == np.ones((3, 3)) - np.eye(3)).all()

    def test_topic_graph_no_self_loops_and_weights(self):
        doc = Document(id="d", sublanguage="unknown", sentences=[[], [], []])
        g1 = FakeGroup([FakeTerm("a", [0, 1]), FakeTerm("b", [2])])
        g2 = FakeGroup([FakeTerm("c", [0, 1])])
        graph = build_topic_graph([g1, g2], doc)
        assert graph.adjacency[0, 0] == 0.0
        assert graph.adjacency[0, 1] == 2.0

    def test_merging_groups_never_decreases_weights(self):
        doc = Document(id="d", sublanguage="unknown", sentences=[[], [], []])
        a, b, c = FakeTerm("a", [0]), FakeTerm("b", [1]), FakeTerm("c", [0, 1])
        separate = build_topic_graph([FakeGroup([a]), FakeGroup([b]), FakeGroup([c])], doc)
        merged = build_topic_graph([FakeGroup([a, b]), FakeGroup([c])], doc)
        # weight between merged {a,b} and {c} covers both old edges
        assert merged.adjacency[0, 1] >= separate.adjacency[0, 2]
        assert merged.adjacency[0, 1] >= separate.adjacency[1, 2]

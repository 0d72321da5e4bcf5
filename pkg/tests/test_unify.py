import json

import numpy as np
import pytest

import linexp as lx
from linexp.unify import (
    check_simple_graph_factor,
    check_star_equivalence,
    degraded_line_adjacency,
    graph_as_hypergraph,
    modified_clique_adjacency,
    simple_graph_adjacency,
)
from linexp.verify import random_connected_graph


def no_zero_degree_corpus(n, nv=12, ne=8, p=0.35, base_seed=100):
    out = []
    seed = base_seed
    while len(out) < n:
        h = lx.random_hypergraph(nv, ne, p, seed)
        seed += 1
        if all(h.vertex_edges(v) for v in range(h.num_vertices)):
            out.append(h)
    return out


class TestStarEquivalence:
    def test_worked_example(self, worked):
        rep = check_star_equivalence(worked)
        assert rep.passed
        assert rep.max_abs_diff <= 1e-12

    def test_corpus(self):
        for h in no_zero_degree_corpus(200):
            assert check_star_equivalence(h).passed

    def test_empty_hyperedge_rejected(self):
        with pytest.raises(lx.HypergraphError):
            check_star_equivalence(lx.Hypergraph(2, ((0,), ())))

    def test_report_json(self, worked):
        rep = check_star_equivalence(worked, seed=4)
        payload = json.loads(rep.to_json())
        assert payload["pass"] is True
        assert payload["seed"] == 4
        assert payload["num_vertices"] == 5


class TestSimpleGraphFactor:
    def test_triangle(self):
        # K3: GCN entry 1/2, degraded LE entry 1/4
        tri = lx.UnlabeledGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
        gcn = simple_graph_adjacency(tri).toarray()
        assert gcn[0, 1] == pytest.approx(1 / 2)
        deg = degraded_line_adjacency(graph_as_hypergraph(tri)).toarray()
        assert deg[0, 1] == pytest.approx(1 / 4)
        assert check_simple_graph_factor(tri).passed

    def test_single_edge(self):
        g = lx.UnlabeledGraph.from_edges(2, [(0, 1)])
        gcn = simple_graph_adjacency(g).toarray()
        assert gcn[0, 1] == pytest.approx(1.0)
        deg = degraded_line_adjacency(graph_as_hypergraph(g)).toarray()
        assert deg[0, 1] == pytest.approx(1 / 2)
        assert check_simple_graph_factor(g).passed

    def test_degraded_self_loop_half(self):
        g = lx.UnlabeledGraph.from_edges(2, [(0, 1)])
        deg = degraded_line_adjacency(graph_as_hypergraph(g)).toarray()
        assert deg[0, 0] == pytest.approx(1 / 2)

    def test_connected_corpus(self):
        rng = np.random.default_rng(21)
        for t in range(50):
            n = int(rng.integers(2, 51))
            g = random_connected_graph(n, float(rng.uniform(0.05, 0.4)), 500 + t)
            assert check_simple_graph_factor(g).passed

    def test_edgeless_rejected(self):
        with pytest.raises(lx.HypergraphError):
            check_simple_graph_factor(lx.UnlabeledGraph(3, ()))


class TestModifiedClique:
    def test_worked_example_pair(self, worked):
        a = modified_clique_adjacency(worked).toarray()
        # vertices 0,1: weight 1/1 + 1/4 = 5/4 over sqrt(3/2)*sqrt(3/2)
        assert a[0, 1] == pytest.approx(5 / 6, abs=1e-15)
        assert np.diag(a).sum() == 0

    def test_singleton_hyperedge_rejected(self):
        with pytest.raises(lx.HypergraphError):
            modified_clique_adjacency(lx.Hypergraph(2, ((0,), (0, 1))))

    def test_symmetric(self):
        for h in no_zero_degree_corpus(30):
            if any(len(e) < 2 for e in h.edges):
                continue
            a = modified_clique_adjacency(h).toarray()
            assert np.allclose(a, a.T, atol=1e-14)


class TestGraphAsHypergraph:
    def test_two_regular(self):
        g = lx.UnlabeledGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        h = graph_as_hypergraph(g)
        assert all(len(e) == 2 for e in h.edges)
        assert h.num_hyperedges == 3

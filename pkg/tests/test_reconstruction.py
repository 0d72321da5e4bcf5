import itertools
from collections import Counter

import numpy as np
import pytest

import linexp as lx
from linexp.reconstruction import dual_hypergraph, strip_labels
from linexp.verify import random_connected_hypergraph


class TestBackProjectLabeled:
    def test_worked_example_exact(self, worked):
        le = lx.line_expand(worked)
        assert lx.back_project_labeled(le) == worked

    def test_single_line_node(self):
        h = lx.Hypergraph(1, ((0,),))
        assert lx.back_project_labeled(lx.line_expand(h)) == h

    def test_round_trip_on_corpus(self):
        for seed in range(200):
            h = lx.random_hypergraph(10, 7, 0.35, seed)
            le = lx.line_expand(h)
            back = lx.back_project_labeled(le, h.num_vertices, h.num_hyperedges)
            assert back == h

    def test_explicit_counts_keep_isolated_vertices(self):
        h = lx.Hypergraph(3, ((0, 1),))  # vertex 2 isolated
        le = lx.line_expand(h)
        assert lx.back_project_labeled(le, 3, 1) == h
        assert lx.back_project_labeled(le).num_vertices == 2


class TestKrauszReconstruct:
    def test_worked_example_unlabeled(self, worked):
        g = strip_labels(lx.line_expand(worked))
        result = lx.krausz_reconstruct(g)
        assert any(
            lx.hypergraph_isomorphic(worked, c) for c in result.candidates
        )

    def test_triangle_yields_star_duals(self):
        tri = lx.UnlabeledGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
        result = lx.krausz_reconstruct(tri)
        star = lx.Hypergraph(3, ((0, 1, 2),))  # 3 vertices, 1 hyperedge
        assert any(lx.hypergraph_isomorphic(star, c) for c in result.candidates)
        assert any(
            lx.hypergraph_isomorphic(dual_hypergraph(star), c)
            for c in result.candidates
        )

    def test_single_node(self):
        g = lx.UnlabeledGraph(1, ())
        result = lx.krausz_reconstruct(g)
        assert result.candidates[0] == lx.Hypergraph(1, ((0,),))

    def test_non_line_graph_rejected(self):
        # K_{1,3} is the classic non-line-graph
        claw = lx.UnlabeledGraph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
        with pytest.raises(lx.NotALineExpansionError):
            lx.krausz_reconstruct(claw)

    def test_cover_invariants_on_corpus(self):
        rng = np.random.default_rng(7)
        for t in range(30):
            nv = int(rng.integers(2, 9))
            ne = int(rng.integers(1, 7))
            h = random_connected_hypergraph(nv, ne, 0.4, 900 + t)
            g = strip_labels(lx.line_expand(h))
            result = lx.krausz_reconstruct(g)
            cover = result.cover
            # every edge inside exactly one clique
            edge_hits = Counter()
            for cl in cover.cliques:
                for a, b in itertools.combinations(sorted(cl), 2):
                    edge_hits[(a, b)] += 1
            assert set(edge_hits) == set(g.edges)
            assert all(c == 1 for c in edge_hits.values())
            # every node in exactly two cliques
            assert len(cover.assignment) == g.num_nodes
            node_hits = Counter()
            for cl in cover.cliques:
                for x in cl:
                    node_hits[x] += 1
            assert all(node_hits[x] == 2 for x in range(g.num_nodes))

    def test_round_trip_corpus(self):
        rng = np.random.default_rng(11)
        for t in range(50):
            nv = int(rng.integers(2, 9))
            ne = int(rng.integers(1, 7))
            p = float(rng.uniform(0.25, 0.7))
            h = random_connected_hypergraph(nv, ne, p, 3000 + t)
            g = strip_labels(lx.line_expand(h))
            result = lx.krausz_reconstruct(g)
            assert any(
                lx.hypergraph_isomorphic(h, c) for c in result.candidates
            ), (t, h)

    def test_disconnected_input(self):
        # two disjoint triangles: union of the component reconstructions
        g = lx.UnlabeledGraph.from_edges(
            6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]
        )
        result = lx.krausz_reconstruct(g)
        counts = {
            (c.num_vertices, c.num_hyperedges) for c in result.candidates
        }
        # each component resolves to a 3-vertex/1-hyperedge star or its dual
        assert all(n + m == 8 for n, m in counts)

    def test_size_limit(self):
        g = lx.UnlabeledGraph(65, ())
        with pytest.raises(lx.HypergraphError):
            lx.krausz_reconstruct(g)


def brute_force_isomorphic(a: lx.Hypergraph, b: lx.Hypergraph) -> bool:
    if a.num_vertices != b.num_vertices or a.num_hyperedges != b.num_hyperedges:
        return False
    for sigma in itertools.permutations(range(a.num_vertices)):
        mapped = Counter(
            tuple(sorted(sigma[v] for v in edge)) for edge in a.edges
        )
        if mapped == Counter(b.edges):
            return True
    return False


def all_hypergraphs(nv: int, ne: int):
    subsets = []
    for r in range(nv + 1):
        subsets.extend(itertools.combinations(range(nv), r))
    for combo in itertools.product(subsets, repeat=ne):
        yield lx.Hypergraph(nv, combo)


class TestIsomorphism:
    def test_permuted_copy(self):
        for seed in range(20):
            h = lx.random_hypergraph(7, 5, 0.4, seed)
            rng = np.random.default_rng(seed)
            sigma = rng.permutation(h.num_vertices)
            permuted = lx.Hypergraph(
                h.num_vertices,
                tuple(
                    tuple(sorted(int(sigma[v]) for v in e)) for e in h.edges
                ),
            )
            assert lx.hypergraph_isomorphic(h, permuted)

    def test_different_degree_multisets(self):
        a = lx.Hypergraph(3, ((0, 1), (1, 2)))
        b = lx.Hypergraph(3, ((0, 1), (0, 1)))
        assert not lx.hypergraph_isomorphic(a, b)

    def test_exhaustive_agreement_with_brute_force(self):
        pool = [
            h
            for nv in (1, 2, 3)
            for ne in (0, 1, 2)
            for h in all_hypergraphs(nv, ne)
        ]
        groups = {}
        for h in pool:
            groups.setdefault((h.num_vertices, h.num_hyperedges), []).append(h)
        for hs in groups.values():
            for a, b in itertools.combinations_with_replacement(hs, 2):
                assert lx.hypergraph_isomorphic(a, b) == brute_force_isomorphic(
                    a, b
                )

    def test_size_limit(self):
        big = lx.Hypergraph(11, tuple((v,) for v in range(11)))
        other = lx.Hypergraph(11, tuple((v,) for v in range(11)))
        with pytest.raises(lx.HypergraphError):
            lx.hypergraph_isomorphic(big, other)

    def test_dual_involution(self):
        for seed in range(10):
            h = lx.random_hypergraph(6, 5, 0.4, seed)
            assert dual_hypergraph(dual_hypergraph(h)) == h

import math

import numpy as np
import pytest

from wqaoa.errors import GenerationError
from wqaoa.graphs import (
    GraphSpec,
    WeightedGraph,
    generate,
    generate_with_girth,
    girth,
    heawood_graph,
)


class TestWeightedGraph:
    def test_canonical_storage(self):
        g = WeightedGraph.from_edges(3, [(2, 0, 1.5), (1, 2, 2.0)])
        assert g.edges == ((0, 2, 1.5), (1, 2, 2.0))

    def test_adjacency_consistency(self):
        g = WeightedGraph.from_edges(4, [(0, 1, 1.0), (1, 2, 2.0), (0, 3, 3.0)])
        rebuilt = [[] for _ in range(4)]
        for u, v, w in g.edges:
            rebuilt[u].append((v, w))
            rebuilt[v].append((u, w))
        assert tuple(tuple(a) for a in rebuilt) == g.adjacency

    @pytest.mark.parametrize("edges,err", [
        ([(0, 0, 1.0)], "self-loop"),
        ([(1, 0, 1.0)], "canonically"),
        ([(0, 1, 1.0), (0, 1, 2.0)], "duplicate"),
        ([(0, 5, 1.0)], "out of range"),
        ([(0, 1, math.nan)], "non-finite"),
    ])
    def test_validation(self, edges, err):
        with pytest.raises(ValueError, match=err):
            WeightedGraph(n=3, edges=tuple(edges))

    def test_json_roundtrip(self):
        g = WeightedGraph.from_edges(3, [(0, 1, 0.25), (1, 2, -1.5)])
        assert WeightedGraph.from_json(g.to_json()) == g

    def test_with_weights(self):
        g = WeightedGraph.from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)])
        g2 = g.with_weights([2.0, 3.0])
        assert g2.weights.tolist() == [2.0, 3.0]
        assert g2.n == g.n

    def test_cut_value(self):
        g = WeightedGraph.from_edges(3, [(0, 1, 2.0), (1, 2, 3.0)])
        assert g.cut_value([1, -1, 1]) == 5.0
        assert g.cut_value([1, 1, 1]) == 0.0


class TestGenerate:
    def test_complete_bipartite_k33(self, k33):
        assert k33.n == 6
        assert k33.num_edges == 9
        assert set(k33.degrees()) == {3}
        assert girth(k33) == 4

    def test_cycle(self):
        g = generate(GraphSpec(kind="cycle", n=5, seed=0))
        assert g.num_edges == 5
        assert set(g.degrees()) == {2}
        assert girth(g) == 5

    def test_random_regular_parity_error(self):
        with pytest.raises(GenerationError, match="odd"):
            generate(GraphSpec(kind="random-regular", n=7, seed=0, d=2))

    @pytest.mark.parametrize("n,d", [(8, 2), (10, 3), (14, 2)])
    def test_random_regular_degrees(self, n, d):
        g = generate(GraphSpec(kind="random-regular", n=n, seed=42, d=d))
        assert set(g.degrees()) == {d + 1}

    def test_deterministic_under_seed(self):
        spec = GraphSpec(kind="erdos-renyi", n=12, seed=99, prob=0.4)
        assert generate(spec) == generate(spec)

    def test_complete(self):
        g = generate(GraphSpec(kind="complete", n=5, seed=0))
        assert g.num_edges == 10

    def test_unit_weights(self):
        g = generate(GraphSpec(kind="erdos-renyi", n=10, seed=3, prob=0.5))
        assert np.all(g.weights == 1.0)

    def test_girth_constrained_generation(self):
        # girth 6 needs room: at n=14 the cage is essentially unique
        for p, n in ((1, 14), (2, 30)):
            spec = GraphSpec(kind="random-regular", n=n, seed=5, d=2)
            g = generate_with_girth(spec, min_girth=2 * p + 2)
            assert girth(g) > 2 * p + 1


class TestGirth:
    def test_triangle(self):
        g = WeightedGraph.from_edges(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)])
        assert girth(g) == 3

    def test_tree_is_infinite(self):
        g = WeightedGraph.from_edges(5, [(0, 1, 1), (0, 2, 1), (2, 3, 1), (2, 4, 1)])
        assert girth(g) == math.inf

    def test_heawood(self):
        g = heawood_graph()
        assert g.n == 14
        assert g.num_edges == 21
        assert set(g.degrees()) == {3}
        assert girth(g) == 6

    def test_even_cycle(self):
        g = generate(GraphSpec(kind="cycle", n=8, seed=0))
        assert girth(g) == 8

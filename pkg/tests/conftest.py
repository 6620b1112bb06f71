import numpy as np
import pytest

from wqaoa.graphs import GraphSpec, WeightedGraph, generate


def random_bipartite(n_left: int, n_right: int, prob: float, seed: int) -> WeightedGraph:
    """Triangle-free by construction (bipartite); unit weights."""
    rng = np.random.default_rng(seed)
    edges = [(u, n_left + v, 1.0)
             for u in range(n_left) for v in range(n_right)
             if rng.random() < prob]
    if not edges:
        edges = [(0, n_left, 1.0)]
    return WeightedGraph.from_edges(n_left + n_right, edges)


@pytest.fixture
def k33() -> WeightedGraph:
    return generate(GraphSpec(kind="complete-bipartite", n=6, seed=0, parts=(3, 3)))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)

"""Weighted graphs: representation, random generation, girth.

Graphs are simple and undirected. Edges are stored canonically as
``(u, v, w)`` with ``u < v``; vertex indices are 0-based and contiguous.
Instances are immutable after construction and safe to share read-only.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import GenerationError

__all__ = [
    "WeightedGraph",
    "GraphSpec",
    "generate",
    "generate_with_girth",
    "girth",
    "heawood_graph",
]


@dataclass(frozen=True)
class WeightedGraph:
    """Simple undirected graph with real edge weights.

    ``edges`` holds ``(u, v, w)`` triples with ``u < v`` and no duplicate
    pairs; ``adjacency`` is derived and gives per-vertex ``(neighbor, w)``
    lists.
    """

    n: int
    edges: tuple[tuple[int, int, float], ...]
    adjacency: tuple[tuple[tuple[int, float], ...], ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        seen: set[tuple[int, int]] = set()
        adj: list[list[tuple[int, float]]] = [[] for _ in range(self.n)]
        for u, v, w in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range for n={self.n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u > v:
                raise ValueError(f"edge ({u},{v}) not stored canonically (u < v)")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u},{v})")
            if not math.isfinite(w):
                raise ValueError(f"non-finite weight on edge ({u},{v})")
            seen.add((u, v))
            adj[u].append((v, float(w)))
            adj[v].append((u, float(w)))
        object.__setattr__(self, "adjacency", tuple(tuple(a) for a in adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, float]]) -> "WeightedGraph":
        """Build a graph, canonicalizing edge orientation and order."""
        canon = sorted((min(u, v), max(u, v), float(w)) for u, v, w in edges)
        return cls(n=n, edges=tuple(canon))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for _, _, w in self.edges], dtype=float)

    def degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self.adjacency], dtype=int)

    def total_weight(self) -> float:
        return float(self.weights.sum()) if self.edges else 0.0

    def with_weights(self, weights: Sequence[float]) -> "WeightedGraph":
        """Same topology with new edge weights (order matches ``edges``)."""
        if len(weights) != len(self.edges):
            raise ValueError("weight count does not match edge count")
        new_edges = tuple((u, v, float(w)) for (u, v, _), w in zip(self.edges, weights))
        return WeightedGraph(n=self.n, edges=new_edges)

    def cut_value(self, z: Sequence[int]) -> float:
        """Total weight of edges crossing the bipartition given by spins +-1."""
        return sum(w for u, v, w in self.edges if z[u] != z[v])

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "edges": [[u, v, w] for u, v, w in self.edges]})

    @classmethod
    def from_json(cls, text: str) -> "WeightedGraph":
        obj = json.loads(text)
        return cls.from_edges(int(obj["n"]), [(int(u), int(v), float(w)) for u, v, w in obj["edges"]])


@dataclass(frozen=True)
class GraphSpec:
    """Reproducible recipe for a random or structured graph.

    Kinds: ``random-regular`` (parameter ``d``; generated graphs are
    (d+1)-regular, i.e. ``d`` is the branching factor of the local tree),
    ``erdos-renyi`` (``prob``), ``complete``, ``cycle``,
    ``complete-bipartite`` (``parts=(a, b)``).
    """

    kind: str
    n: int
    seed: int
    d: int | None = None
    prob: float | None = None
    parts: tuple[int, int] | None = None


def _pairing_model_regular(n: int, degree: int, rng: np.random.Generator,
                           max_tries: int = 10_000) -> list[tuple[int, int]]:
    """Uniform-ish random regular graph via stub pairing with rejection."""
    stubs = np.repeat(np.arange(n), degree)
    for _ in range(max_tries):
        perm = rng.permutation(stubs)
        pairs = perm.reshape(-1, 2)
        edges = set()
        ok = True
        for a, b in pairs:
            u, v = (int(a), int(b)) if a < b else (int(b), int(a))
            if u == v or (u, v) in edges:
                ok = False
                break
            edges.add((u, v))
        if ok:
            return sorted(edges)
    raise GenerationError(f"no simple {degree}-regular graph found in {max_tries} tries")


def generate(spec: GraphSpec) -> WeightedGraph:
    """Generate the graph described by ``spec`` with unit weights.

    Deterministic: the same spec (including seed) yields the same graph.
    """
    rng = np.random.default_rng(np.random.SeedSequence(spec.seed))
    n = spec.n
    if spec.kind == "random-regular":
        if spec.d is None:
            raise ValueError("random-regular spec requires d")
        degree = spec.d + 1
        if degree >= n:
            raise GenerationError(f"degree {degree} infeasible for n={n}")
        if (n * degree) % 2 != 0:
            raise GenerationError(f"degree sequence infeasible: n*(d+1) = {n * degree} is odd")
        pairs = _pairing_model_regular(n, degree, rng)
    elif spec.kind == "erdos-renyi":
        if spec.prob is None:
            raise ValueError("erdos-renyi spec requires prob")
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < spec.prob]
    elif spec.kind == "complete":
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    elif spec.kind == "cycle":
        if n < 3:
            raise GenerationError("cycle requires n >= 3")
        pairs = [(u, (u + 1) % n) for u in range(n)]
        pairs = sorted((min(a, b), max(a, b)) for a, b in pairs)
    elif spec.kind == "complete-bipartite":
        if spec.parts is None:
            raise ValueError("complete-bipartite spec requires parts")
        a, b = spec.parts
        if a + b != n:
            raise ValueError(f"parts {spec.parts} do not sum to n={n}")
        pairs = [(u, a + v) for u in range(a) for v in range(b)]
    else:
        raise ValueError(f"unknown graph kind {spec.kind!r}")
    return WeightedGraph.from_edges(n, [(u, v, 1.0) for u, v in pairs])


def generate_with_girth(spec: GraphSpec, min_girth: int, max_tries: int = 10_000) -> WeightedGraph:
    """Regenerate under fresh sub-seeds until girth > ``min_girth`` - 1.

    Accepts a graph with ``girth(g) >= min_girth``; raises after
    ``max_tries`` rejections.
    """
    for attempt in range(max_tries):
        sub = GraphSpec(kind=spec.kind, n=spec.n,
                        seed=int(np.random.SeedSequence([spec.seed, attempt]).generate_state(1)[0]),
                        d=spec.d, prob=spec.prob, parts=spec.parts)
        g = generate(sub)
        if girth(g) >= min_girth:
            return g
    raise GenerationError(f"no graph of girth >= {min_girth} found in {max_tries} tries")


def girth(g: WeightedGraph) -> float:
    """Length of the shortest cycle; ``math.inf`` for forests."""
    best = math.inf
    neighbors = [[v for v, _ in adj] for adj in g.adjacency]
    for start in range(g.n):
        # BFS from `start`; a non-tree edge closes a cycle through `start`
        # of length dist[u] + dist[v] + 1 (shortest through start is found).
        dist = {start: 0}
        parent = {start: -1}
        queue = [start]
        while queue:
            nxt: list[int] = []
            for u in queue:
                if dist[u] * 2 >= best:
                    continue
                for v in neighbors[u]:
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        parent[v] = u
                        nxt.append(v)
                    elif v != parent[u] and dist[v] >= dist[u]:
                        best = min(best, dist[u] + dist[v] + 1)
            queue = nxt
    return best


def triangle_free(g: WeightedGraph) -> bool:
    return girth(g) > 3


_HEAWOOD_LCF = [5, -5] * 7


def heawood_graph() -> WeightedGraph:
    """The 14-vertex 3-regular girth-6 graph, via its LCF description."""
    n = 14
    pairs = {(u, (u + 1) % n) for u in range(n)}
    for u, step in enumerate(_HEAWOOD_LCF):
        pairs.add((u, (u + step) % n))
    canon = {(min(a, b), max(a, b)) for a, b in pairs}
    return WeightedGraph.from_edges(n, [(u, v, 1.0) for u, v in sorted(canon)])

"""Instance ensembles for the benchmark harness."""
from __future__ import annotations

import numpy as np

from ..distributions import WeightDistribution
from ..errors import GenerationError
from ..graphs import GraphSpec, WeightedGraph, generate
from ..polynomials import PortfolioInstance
from .config import child_seed


def benchmark_graph(n: int, instance_index: int, dist: WeightDistribution,
                    root_seed: int) -> WeightedGraph:
    """One weighted benchmark graph: regular and non-regular mixed.

    Even indices draw a random-regular topology (degrees 3..5), odd ones
    an edge-probability ensemble tuned to average degree about 4; both
    are regenerated until the average degree exceeds 2 so every
    parameter-setting rule is defined.
    """
    ss = child_seed(root_seed, n, instance_index)
    topo_seed, weight_seed = ss.spawn(2)
    rng = np.random.default_rng(weight_seed)
    base_seed = int(topo_seed.generate_state(1)[0])
    for attempt in range(200):
        if instance_index % 2 == 0:
            d = 2 + (instance_index // 2 + attempt) % 3  # degree d+1 in {3,4,5}
            spec = GraphSpec(kind="random-regular", n=n, seed=base_seed + attempt, d=d)
        else:
            spec = GraphSpec(kind="erdos-renyi", n=n, seed=base_seed + attempt,
                             prob=min(0.9, 4.0 / (n - 1)))
        try:
            g = generate(spec)
        except GenerationError:
            continue
        if 2.0 * g.num_edges / g.n > 2.0:
            weights = dist.sample(rng, g.num_edges)
            return g.with_weights(weights)
    raise GenerationError(f"could not build benchmark graph for n={n}")


def portfolio_instance(n: int, instance_index: int, root_seed: int,
                       q: float = 0.5, vol: float = 0.1) -> PortfolioInstance:
    """Random budget-constrained portfolio instance.

    One-factor covariance: sigma = b b^T + diag(idiosyncratic) with
    per-asset market loadings b ~ vol * U[0.5, 1.5] and idiosyncratic
    variances ~ (0.3 vol)^2 * U[0.5, 1.5]; expected returns are uniform
    on [0, 0.1 * vol]; the budget is floor(n/2).  Stands in for
    market-data generators: the factor structure gives the landscape a
    single dominant basin, and the small coefficient scale makes the
    unrescaled landscape flat.
    """
    rng = np.random.default_rng(child_seed(root_seed, n, instance_index))
    loadings = rng.uniform(0.5, 1.5, n) * vol
    idio = (0.3 * vol) ** 2 * rng.uniform(0.5, 1.5, n)
    sigma = np.outer(loadings, loadings) + np.diag(idio)
    mu = rng.uniform(0.0, 0.1 * vol, n)
    return PortfolioInstance(n=n, sigma=sigma, mu=mu, q=q, k=n // 2)

"""Closed-form depth-1 results for weighted MaxCut on triangle-free graphs.

Covers the exact depth-1 energy, its expectation over i.i.d. random edge
weights on (D+1)-regular graphs, the optimal angle for exponential
weights, and the normalized large-degree coefficient (finite-degree and
limiting forms).

Angle conventions: this module and the simulator share one convention, in
which the depth-1 energy is maximized at beta = pi/8 and the limiting
coefficient peaks at gamma' = 1/sqrt(E[w^2]).  Parameter tables quoted in
the doubled convention (beta optimum at pi/4) convert via
:func:`convert_beta`: beta_closed_form = beta_table / 2, gamma unchanged.
"""
from __future__ import annotations

import math

import numpy as np

from .distributions import WeightDistribution
from .errors import PreconditionError
from .graphs import WeightedGraph, girth

__all__ = [
    "convert_beta",
    "energy_p1",
    "expected_energy_exponential",
    "optimal_gamma_exponential",
    "expected_energy_general",
    "theta1_finite",
    "theta1_limit",
    "theta1_limit_optimal_gamma",
]

BETA_STAR_P1 = math.pi / 8.0


def convert_beta(beta, source: str, target: str):
    """Convert mixer angles between the "table" and "closed-form" conventions.

    The two differ by a factor of two in beta (gamma is shared):
    beta_closed_form = beta_table / 2.
    """
    for name in (source, target):
        if name not in ("table", "closed-form"):
            raise ValueError(f"unknown convention {name!r}")
    beta = np.asarray(beta, dtype=float)
    if source == target:
        out = beta
    elif source == "table":
        out = beta / 2.0
    else:
        out = beta * 2.0
    return out if np.ndim(out) else float(out)


def energy_p1(g: WeightedGraph, gamma: float, beta: float) -> float:
    """Exact depth-1 QAOA cut expectation on a triangle-free graph.

    total/2 + sin(4 beta)/4 * sum_{uv} w_uv sin(w_uv g) *
    (prod_{k ~ u, k != v} cos(w_uk g) + prod_{t ~ v, t != u} cos(w_tv g)).
    """
    if girth(g) <= 3:
        raise PreconditionError("depth-1 closed form requires a triangle-free graph")
    total = g.total_weight()
    acc = 0.0
    adjacency = g.adjacency
    for u, v, w in g.edges:
        prod_u = 1.0
        for nb, wn in adjacency[u]:
            if nb != v:
                prod_u *= math.cos(wn * gamma)
        prod_v = 1.0
        for nb, wn in adjacency[v]:
            if nb != u:
                prod_v *= math.cos(wn * gamma)
        acc += w * math.sin(w * gamma) * (prod_u + prod_v)
    return total / 2.0 + math.sin(4.0 * beta) / 4.0 * acc


def expected_energy_exponential(N: int, D: int, lam: float, gamma):
    """Expected depth-1 energy over exponential(lam) weights at beta = pi/8.

    N(D+1)/2 * [1/(2 lam) + gamma * lam^(2D+2) / (lam^2+gamma^2)^(D+2)],
    evaluated in a power form that is stable for large D.
    """
    if lam <= 0:
        raise ValueError("lam must be positive")
    if D < 1:
        raise ValueError("D must be >= 1")
    gamma = np.asarray(gamma, dtype=float)
    lam2 = lam * lam
    ratio = lam2 / (lam2 + gamma**2)
    out = 0.5 * N * (D + 1) * (0.5 / lam + gamma * ratio ** (D + 1) / (lam2 + gamma**2))
    return out if np.ndim(out) else float(out)


def optimal_gamma_exponential(D: int, lam: float) -> float:
    """Global maximizer of :func:`expected_energy_exponential` in gamma.

    Equals lam / sqrt(2D+3) = 1 / (sqrt(E[w^2]) * sqrt(D + 3/2)) with
    E[w^2] = 2 / lam^2.
    """
    if lam <= 0:
        raise ValueError("lam must be positive")
    return lam / math.sqrt(2.0 * D + 3.0)


def expected_energy_general(N: int, D: int, dist: WeightDistribution, gamma):
    """Expected depth-1 energy at beta = pi/8 for i.i.d. weights from ``dist``.

    N(D+1)/2 * [mu/2 + E[w sin(w g)] * E[cos(w g)]^D / 2].
    """
    mu = dist.mean()
    gamma = np.asarray(gamma, dtype=float)
    ws = dist.w_sin_expectation(gamma)
    co = dist.cos_expectation(gamma)
    out = 0.5 * N * (D + 1) * (0.5 * mu + 0.5 * ws * co**D)
    return out if np.ndim(out) else float(out)


def theta1_finite(D: int, dist: WeightDistribution, gamma):
    """Finite-degree normalized coefficient.

    sqrt(D)/(2 mu) * E[w sin(w g)] * E[cos(w g)]^D; the deviation of the
    normalized energy from 1/2, scaled by sqrt(D).
    """
    mu = dist.mean()
    if mu == 0.0:
        raise PreconditionError("normalization requires nonzero mean weight")
    gamma = np.asarray(gamma, dtype=float)
    out = math.sqrt(D) / (2.0 * mu) * dist.w_sin_expectation(gamma) * dist.cos_expectation(gamma) ** D
    return out if np.ndim(out) else float(out)


def theta1_limit(dist: WeightDistribution, gamma_prime):
    """Infinite-degree limit of theta1_finite(D, dist, g'/sqrt(D)).

    E[w^2]/(2 mu) * g' * exp(-E[w^2] g'^2 / 2); its global maximum sits at
    g'* = 1/sqrt(E[w^2]).
    """
    mu = dist.mean()
    if mu == 0.0:
        raise PreconditionError("normalization requires nonzero mean weight")
    m2 = dist.second_moment()
    gp = np.asarray(gamma_prime, dtype=float)
    out = m2 / (2.0 * mu) * gp * np.exp(-0.5 * m2 * gp**2)
    return out if np.ndim(out) else float(out)


def theta1_limit_optimal_gamma(dist: WeightDistribution) -> float:
    """Maximizer of :func:`theta1_limit`: 1/sqrt(E[w^2])."""
    m2 = dist.second_moment()
    if m2 <= 0:
        raise PreconditionError("requires a positive second moment")
    return 1.0 / math.sqrt(m2)

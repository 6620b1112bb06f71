"""Fully-connected spin glass with biased Gaussian couplings.

G(z) = -sum_{i<j} J_ij z_i z_j with J_ij ~ Normal(mu(N), sigma^2) i.i.d.
Provides the sandwich bounds on E[max_z G], a Monte-Carlo estimate with
exhaustive per-draw maximization, and the limiting values per bias
regime.  N is restricted to even values; odd N changes the clean-bias
optimizer structure and is rejected rather than silently adjusted.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, PreconditionError

__all__ = [
    "PI_STAR",
    "BiasedSKSpec",
    "h_of_N",
    "bounds",
    "mc_expected_max",
    "limiting_value",
]

# Optimal-cut constant of the zero-bias model, stored to the four digits
# commonly quoted; no solver for it is included.
PI_STAR = 0.7632

MAX_MC_SPINS = 22


@dataclass(frozen=True)
class BiasedSKSpec:
    N: int
    mu: float
    sigma: float
    seed: int = 0

    def __post_init__(self) -> None:
        if self.N < 2:
            raise ValueError("need N >= 2")
        if self.sigma <= 0:
            raise ValueError("sigma must be positive")


def _require_even(N: int) -> None:
    if N % 2 != 0:
        raise PreconditionError(f"N must be even, got {N}")


def h_of_N(N: int, mu: float) -> float:
    """Bias multiplier defined by h(N) = max_z E[G(z)] / mu (mu != 0).

    For mu < 0 the mean coupling is ferromagnetic after the sign in G, so
    aligning all spins gives -C(N,2) * mu.  For mu > 0 the complete-graph
    antiferromagnet is frustrated: a balanced assignment only reaches
    sum_{i<j} z_i z_j = -N/2, hence h(N) = N/2 (the often-quoted N^2/4 is
    the max-cut edge count, not this objective's value, and would break
    the lower bound).
    """
    _require_even(N)
    if mu > 0:
        return N / 2.0
    if mu < 0:
        return -math.comb(N, 2)
    return 0.0


def bounds(spec: BiasedSKSpec) -> tuple[float, float]:
    """Sandwich on E[max_z G]:

    mu*h(N) <= E[max G] <= sigma*sqrt(log(4) N C(N,2)) + mu*h(N).
    """
    base = spec.mu * h_of_N(spec.N, spec.mu)
    spread = spec.sigma * math.sqrt(math.log(4.0) * spec.N * math.comb(spec.N, 2))
    return base, base + spread


_SPIN_CACHE: dict[int, np.ndarray] = {}


def _half_spin_table(N: int) -> np.ndarray:
    """Spin matrix over configurations with z_0 fixed to +1 (G is even)."""
    if N not in _SPIN_CACHE:
        cfg = np.arange(1 << (N - 1), dtype=np.uint32)
        bits = (cfg[:, None] >> np.arange(N - 1, dtype=np.uint32)[None, :]) & 1
        z = np.empty((cfg.size, N))
        z[:, 0] = 1.0
        z[:, 1:] = 1.0 - 2.0 * bits
        _SPIN_CACHE[N] = z
    return _SPIN_CACHE[N]


def max_g(coupling: np.ndarray) -> float:
    """Exhaustive max of G for one symmetric zero-diagonal coupling matrix."""
    N = coupling.shape[0]
    Z = _half_spin_table(N)
    vals = -0.5 * np.einsum("ci,ci->c", Z @ coupling, Z)
    return float(vals.max())


def mc_expected_max(spec: BiasedSKSpec, n_samples: int) -> tuple[float, float]:
    """Monte-Carlo estimate of E[max_z G] with its standard error."""
    _require_even(spec.N)
    if spec.N > MAX_MC_SPINS:
        raise CapacityError(f"exhaustive enumeration needs N <= {MAX_MC_SPINS}")
    rng = np.random.default_rng(np.random.SeedSequence(spec.seed))
    N = spec.N
    iu = np.triu_indices(N, k=1)
    maxima = np.empty(n_samples)
    for s in range(n_samples):
        J = np.zeros((N, N))
        J[iu] = rng.normal(spec.mu, spec.sigma, iu[0].size)
        J = J + J.T
        maxima[s] = max_g(J)
    estimate = float(maxima.mean())
    stderr = float(maxima.std(ddof=1) / math.sqrt(n_samples))
    return estimate, stderr


def limiting_value(mu: float, regime: str, sigma: float = 1.0) -> float:
    """Infinite-size limit of the normalized expected maximum.

    - "constant-bias": E[max G]/N^2     -> mu / (2 (1 + sign(mu)))
    - "zero-bias":     E[max G]/N^(3/2) -> sigma * PI_STAR
    - "sqrtN-bias":    E[max G]/N^(3/2) -> sigma * PI_STAR + mu / (2 (1 + sign(mu)))

    with sign(x) = 1 for x >= 0 and 0 for x < 0; in the sqrtN regime mu
    denotes the limit of mu(N) * sqrt(N).
    """
    sgn = 1.0 if mu >= 0 else 0.0
    biased = mu / (2.0 * (1.0 + sgn))
    if regime == "constant-bias":
        return biased
    if regime == "zero-bias":
        return sigma * PI_STAR
    if regime == "sqrtN-bias":
        return sigma * PI_STAR + biased
    raise ValueError(f"unknown regime {regime!r}")

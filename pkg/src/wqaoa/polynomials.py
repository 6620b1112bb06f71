"""Spin-polynomial cost functions and the coefficient rescaling rules.

The cost of an assignment z in {-1,+1}^n is a sparse multilinear
polynomial.  Bit convention, fixed package-wide: basis index b encodes
variable j in bit j (least significant bit = variable 0), and z_j = +1
when bit j of b is 0, z_j = -1 when it is 1.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .distributions import empirical_scale
from .errors import CapacityError, DegenerateScaleError
from .graphs import WeightedGraph

__all__ = [
    "SpinPolynomial",
    "PortfolioInstance",
    "maxcut_poly",
    "portfolio_poly",
    "rescale_graph",
    "rescale_poly",
    "cost_vector",
    "brute_force_max",
    "spins_from_index",
]

MAX_EXACT_QUBITS = 24


@dataclass(frozen=True)
class SpinPolynomial:
    """Sparse multilinear polynomial over n spin variables.

    ``terms`` maps strictly increasing index tuples to nonzero real
    coefficients; ``sense`` records whether the objective is to be
    maximized ("max", MaxCut) or minimized ("min", portfolio).
    """

    n: int
    terms: Mapping[tuple[int, ...], float]
    constant: float = 0.0
    sense: str = "max"

    def __post_init__(self) -> None:
        if self.sense not in ("max", "min"):
            raise ValueError(f"sense must be 'max' or 'min', got {self.sense!r}")
        clean: dict[tuple[int, ...], float] = {}
        for idx, coeff in self.terms.items():
            idx = tuple(int(i) for i in idx)
            if not idx:
                raise ValueError("empty index tuple; use `constant` instead")
            if any(a >= b for a, b in zip(idx, idx[1:])):
                raise ValueError(f"index tuple {idx} not strictly increasing")
            if idx[-1] >= self.n or idx[0] < 0:
                raise ValueError(f"index tuple {idx} out of range for n={self.n}")
            if not math.isfinite(coeff):
                raise ValueError(f"non-finite coefficient on {idx}")
            if coeff != 0.0:
                clean[idx] = float(coeff)
        object.__setattr__(self, "terms", clean)

    @property
    def degree(self) -> int:
        return max((len(t) for t in self.terms), default=0)

    def evaluate(self, z: Sequence[int]) -> float:
        val = self.constant
        for idx, coeff in self.terms.items():
            prod = 1
            for i in idx:
                prod *= z[i]
            val += coeff * prod
        return val

    def coefficients_by_order(self) -> dict[int, np.ndarray]:
        """Group non-constant coefficients by term order."""
        grouped: dict[int, list[float]] = {}
        for idx, coeff in self.terms.items():
            grouped.setdefault(len(idx), []).append(coeff)
        return {k: np.array(v) for k, v in sorted(grouped.items())}

    def scaled(self, factor: float) -> "SpinPolynomial":
        return SpinPolynomial(
            n=self.n,
            terms={idx: c * factor for idx, c in self.terms.items()},
            constant=self.constant * factor,
            sense=self.sense,
        )


@dataclass(frozen=True)
class PortfolioInstance:
    """Mean-variance portfolio selection with an exact budget.

    Objective (to minimize over binary x with sum(x) = k):
    ``q * x^T sigma x - mu^T x``.
    """

    n: int
    sigma: np.ndarray
    mu: np.ndarray
    q: float
    k: int

    def __post_init__(self) -> None:
        sigma = np.asarray(self.sigma, dtype=float)
        mu = np.asarray(self.mu, dtype=float)
        if sigma.shape != (self.n, self.n):
            raise ValueError(f"sigma must be {self.n}x{self.n}")
        if mu.shape != (self.n,):
            raise ValueError(f"mu must have length {self.n}")
        if not np.allclose(sigma, sigma.T, atol=1e-12, rtol=0.0):
            raise ValueError("sigma must be symmetric within 1e-12")
        if not 0 < self.k < self.n:
            raise ValueError("budget k must satisfy 0 < k < n")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "mu", mu)

    def objective(self, x: Sequence[int]) -> float:
        x = np.asarray(x, dtype=float)
        return float(self.q * x @ self.sigma @ x - self.mu @ x)

    def to_json(self) -> str:
        return json.dumps({
            "n": self.n,
            "sigma": self.sigma.tolist(),
            "mu": self.mu.tolist(),
            "q": self.q,
            "k": self.k,
        })

    @classmethod
    def from_json(cls, text: str) -> "PortfolioInstance":
        obj = json.loads(text)
        return cls(n=int(obj["n"]), sigma=np.array(obj["sigma"], dtype=float),
                   mu=np.array(obj["mu"], dtype=float), q=float(obj["q"]), k=int(obj["k"]))


def maxcut_poly(g: WeightedGraph) -> SpinPolynomial:
    """Cut weight as a spin polynomial: sum_e w/2 * (1 - z_u z_v)."""
    terms = {(u, v): -0.5 * w for u, v, w in g.edges}
    return SpinPolynomial(n=g.n, terms=terms, constant=0.5 * g.total_weight(), sense="max")


def portfolio_poly(inst: PortfolioInstance) -> SpinPolynomial:
    """Expand the portfolio objective in spins via x_j = (1 - z_j) / 2.

    Diagonal sigma entries fold into constant and linear parts (z_j^2 = 1).
    The budget constraint is not encoded; it is enforced by the mixer.
    """
    n = inst.n
    const = 0.0
    linear = np.zeros(n)
    pair: dict[tuple[int, int], float] = {}
    q, sigma, mu = inst.q, inst.sigma, inst.mu

    # q * x^T sigma x, with x_i x_j = (1 - z_i - z_j + z_i z_j) / 4
    for i in range(n):
        for j in range(n):
            c = q * sigma[i, j]
            if c == 0.0:
                continue
            if i == j:
                # x_i^2 = x_i = (1 - z_i)/2
                const += c / 2.0
                linear[i] -= c / 2.0
            else:
                const += c / 4.0
                linear[i] -= c / 4.0
                linear[j] -= c / 4.0
                key = (i, j) if i < j else (j, i)
                pair[key] = pair.get(key, 0.0) + c / 4.0

    # -mu^T x = -sum mu_j (1 - z_j)/2
    const -= float(mu.sum()) / 2.0
    linear += mu / 2.0

    terms: dict[tuple[int, ...], float] = {(i,): float(c) for i, c in enumerate(linear) if c != 0.0}
    terms.update({k: v for k, v in pair.items() if v != 0.0})
    return SpinPolynomial(n=n, terms=terms, constant=float(const), sense="min")


def rescale_graph(g: WeightedGraph) -> tuple[WeightedGraph, float]:
    """Divide every edge weight by the RMS weight; returns (graph, scale).

    The rescaled graph has mean squared weight exactly 1.
    """
    scale = empirical_scale(g.weights)
    return g.with_weights(g.weights / scale), scale


def rescale_poly(p: SpinPolynomial) -> tuple[SpinPolynomial, float]:
    """Divide all coefficients by the per-order RMS aggregate.

    scale = sqrt( sum over orders i>=1 of mean of squared order-i
    coefficients ).  The constant does not enter the scale but is divided
    too, so the optimization landscape is an exact rescaling.
    """
    by_order = p.coefficients_by_order()
    if not by_order:
        raise DegenerateScaleError("polynomial has no non-constant terms")
    total = sum(float(np.mean(c**2)) for c in by_order.values())
    if total == 0.0:
        raise DegenerateScaleError("all non-constant coefficients are zero")
    scale = math.sqrt(total)
    return p.scaled(1.0 / scale), scale


def spins_from_index(b: int, n: int) -> np.ndarray:
    """Spin vector for basis index ``b`` (bit j set -> z_j = -1)."""
    bits = (b >> np.arange(n)) & 1
    return 1 - 2 * bits


def _evaluate_indices(p: SpinPolynomial, idx: np.ndarray) -> np.ndarray:
    """Vectorized evaluation at the given basis indices."""
    idx = np.asarray(idx, dtype=np.uint64)
    out = np.full(idx.shape, p.constant, dtype=float)
    for t, coeff in p.terms.items():
        mask = np.uint64(0)
        for i in t:
            mask |= np.uint64(1) << np.uint64(i)
        parity = np.bitwise_count(idx & mask) & np.uint64(1)
        out += coeff * (1.0 - 2.0 * parity.astype(float))
    return out


def _evaluate_range(p: SpinPolynomial, start: int, stop: int) -> np.ndarray:
    return _evaluate_indices(p, np.arange(start, stop, dtype=np.uint64))


def cost_vector(p: SpinPolynomial) -> np.ndarray:
    """Dense vector of polynomial values over all 2^n basis indices."""
    if p.n > MAX_EXACT_QUBITS:
        raise CapacityError(f"cost_vector needs n <= {MAX_EXACT_QUBITS}, got {p.n}")
    return _evaluate_range(p, 0, 1 << p.n)


def brute_force_max(p: SpinPolynomial, n: int | None = None) -> tuple[float, np.ndarray]:
    """Exact maximum of the polynomial over all spin assignments.

    Ties break toward the lowest basis index.  Returns (value, argmax
    spins).  Chunked so n = 24 stays within memory.
    """
    if n is None:
        n = p.n
    if n != p.n:
        raise ValueError(f"polynomial is over {p.n} variables, got n={n}")
    if n > MAX_EXACT_QUBITS:
        raise CapacityError(f"brute force needs n <= {MAX_EXACT_QUBITS}, got {n}")
    best_val = -math.inf
    best_idx = 0
    chunk = 1 << min(n, 20)
    for start in range(0, 1 << n, chunk):
        vals = _evaluate_range(p, start, min(start + chunk, 1 << n))
        j = int(np.argmax(vals))
        if vals[j] > best_val:
            best_val = float(vals[j])
            best_idx = start + j
    return best_val, spins_from_index(best_idx, n)


def brute_force_min(p: SpinPolynomial) -> tuple[float, np.ndarray]:
    """Exact minimum, same conventions as :func:`brute_force_max`."""
    neg = SpinPolynomial(n=p.n, terms={t: -c for t, c in p.terms.items()},
                         constant=-p.constant, sense=p.sense)
    val, arg = brute_force_max(neg)
    return -val, arg

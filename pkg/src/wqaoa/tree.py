"""Depth-p energy on locally tree-like regular graphs via transfer tables.

For a (D+1)-regular graph of girth > 2p+1, the two-point function of an
edge depends only on the pair of D-ary trees hanging off it.  Averaging
over i.i.d. edge weights removes all randomness, so the expected energy
is a deterministic function of (N, D, weight distribution, parameters),
computable by iterating a table over 2^(2p+1) spin configurations from
the leaves to the roots.

A configuration assigns a spin to each of the 2p+1 time slots
r in {-p, ..., p}; slot r is stored at position p+r, and slot 0 (position
p) is the measured spin.  Configurations are encoded as integers with
bit s = 0 meaning spin +1 at position s.

Convention anchor: the public functions take (gammas, betas) in the same
closed-form convention as the simulator and closed_form module.  The
transfer kernel internally uses half of each gamma; this single factor is
calibrated so that the depth-1 limit reproduces theta1_limit exactly
(value 1/(2*sqrt(e)) at its optimum) and the finite-D depth-1 energy
matches expected_energy_general.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import WeightDistribution
from .errors import NumericalError, PreconditionError

__all__ = [
    "HTable",
    "spin_table",
    "gamma_vector",
    "g_table",
    "dot_matrix",
    "initial_h",
    "h_iterate_finite",
    "h_iterate_limit",
    "nu_p",
    "theta_p_limit",
    "expected_energy_p_finite",
    "sk_limit_energy",
]

_NORM_TOL = 1e-10


def spin_table(p: int) -> np.ndarray:
    """(2^(2p+1), 2p+1) array of spins; entry [c, s] is the slot-s spin of c."""
    m = 2 * p + 1
    configs = np.arange(1 << m, dtype=np.uint32)
    bits = (configs[:, None] >> np.arange(m, dtype=np.uint32)[None, :]) & 1
    return (1 - 2 * bits.astype(np.int8)).astype(float)


def gamma_vector(gammas) -> np.ndarray:
    """Antisymmetric slot vector: +g_r at slot p+r, -g_r at slot p-r, 0 at p."""
    gammas = np.asarray(gammas, dtype=float)
    p = gammas.size
    vec = np.zeros(2 * p + 1)
    for r in range(1, p + 1):
        vec[p + r] = gammas[r - 1]
        vec[p - r] = -gammas[r - 1]
    return vec


def g_table(betas) -> np.ndarray:
    """Mixer weight g(z) for every configuration.

    Product over the slot chain of 2x2 transverse-rotation matrix
    elements: <a|e^{+i b X}|b> = cos b if a = b else i sin b on the
    positive branch, conjugated on the negative branch, times 1/2.
    """
    betas = np.asarray(betas, dtype=float)
    p = betas.size
    Z = spin_table(p)

    def slot(r: int) -> int:
        return p + r

    pairs: list[tuple[int, int, float, int]] = [
        (slot(p), slot(0), betas[p - 1], +1),
        (slot(0), slot(-p), betas[p - 1], -1),
    ]
    for r in range(1, p):
        pairs.append((slot(r), slot(r + 1), betas[r - 1], +1))
        pairs.append((slot(-(r + 1)), slot(-r), betas[r - 1], -1))

    g = np.full(Z.shape[0], 0.5, dtype=complex)
    for sa, sb, beta, sign in pairs:
        equal = Z[:, sa] == Z[:, sb]
        g *= np.where(equal, math.cos(beta), sign * 1j * math.sin(beta))
    return g


def dot_matrix(slot_vector: np.ndarray) -> np.ndarray:
    """Matrix of slot_vector . (z_u * z_v) over all configuration pairs."""
    p = (slot_vector.size - 1) // 2
    Z = spin_table(p)
    return (Z * slot_vector) @ Z.T


@dataclass(frozen=True)
class HTable:
    """Transfer table at recursion depth ``depth`` for 2p+1 slots."""

    p: int
    depth: int
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.values.shape != (1 << (2 * self.p + 1),):
            raise ValueError("table length must be 2^(2p+1)")

    def __getitem__(self, config: int) -> complex:
        return complex(self.values[config])


def initial_h(p: int) -> HTable:
    """Leaf table: identically one."""
    return HTable(p=p, depth=0, values=np.ones(1 << (2 * p + 1), dtype=complex))


def _check_normalization(g: np.ndarray, values: np.ndarray) -> None:
    total = complex(np.sum(g * values))
    if abs(total - 1.0) > _NORM_TOL:
        raise NumericalError(f"table normalization sum g*H = {total}, expected 1")


def h_iterate_finite(D: int, dist: WeightDistribution, gamma_vec: np.ndarray,
                     g: np.ndarray, prev: HTable) -> HTable:
    """One leaf-to-root level at finite child count D.

    new(z_v) = [ sum_u prev(z_u) g(z_u) E[cos(w * Gamma.(z_u z_v))] ]^D;
    the product over the D i.i.d. children collapses to a power.  The
    output normalization sum g*H = 1 is asserted on every call.
    """
    P = dot_matrix(gamma_vec)
    kernel = dist.cos_expectation(P)
    inner = kernel @ (g * prev.values)
    values = inner**D
    _check_normalization(g, values)
    return HTable(p=prev.p, depth=prev.depth + 1, values=values)


def h_iterate_limit(m2: float, gamma_vec: np.ndarray, g: np.ndarray,
                    prev: HTable) -> HTable:
    """One level of the infinite-D table.

    new(z_v) = exp(-m2/2 * sum_u g(z_u) prev(z_u) (Gamma.(z_u z_v))^2),
    the D -> infinity limit of the finite iterate at angles Gamma/sqrt(D).
    Satisfies new(m2, Gamma) = new(1, sqrt(m2)*Gamma).
    """
    if m2 <= 0 or not math.isfinite(m2):
        raise ValueError("m2 must be positive and finite")
    P2 = dot_matrix(gamma_vec) ** 2
    quad = P2 @ (g * prev.values)
    values = np.exp(-0.5 * m2 * quad)
    _check_normalization(g, values)
    return HTable(p=prev.p, depth=prev.depth + 1, values=values)


def _kernel_angles(gammas) -> np.ndarray:
    # Single calibration point of the package: the transfer kernel sees
    # half of each closed-form gamma.
    return gamma_vector(np.asarray(gammas, dtype=float) / 2.0)


def _root_weight(g: np.ndarray, table: HTable) -> np.ndarray:
    p = table.p
    Z = spin_table(p)
    return Z[:, p] * g * table.values


def _bilinear(u: np.ndarray, M: np.ndarray) -> complex:
    return complex(u @ (M @ u))


def _as_real(value: complex, what: str) -> float:
    scale = max(1.0, abs(value))
    if abs(value.imag) > 1e-10 * scale:
        raise NumericalError(f"{what} has non-negligible imaginary part {value.imag!r}")
    return float(value.real)


def nu_p(gammas, betas) -> float:
    """Limiting normalized edge coefficient for unit weights.

    Combines the two root tables of the infinite-D recursion at m2 = 1.
    For p = 1 this equals theta1_limit of a unit point mass:
    nu_1(g, pi/8) = (g/2) exp(-g^2/2), maximal value 1/(2 sqrt(e)).
    """
    gammas = np.asarray(gammas, dtype=float)
    betas = np.asarray(betas, dtype=float)
    if gammas.size != betas.size:
        raise ValueError("gammas and betas must have equal length")
    phase = _kernel_angles(gammas)
    g = g_table(betas)
    table = initial_h(gammas.size)
    for _ in range(gammas.size):
        table = h_iterate_limit(1.0, phase, g, table)
    u = _root_weight(g, table)
    val = 0.5j * _bilinear(u, dot_matrix(phase))
    return _as_real(val, "nu_p")


def theta_p_limit(dist: WeightDistribution, gammas, betas) -> float:
    """Limiting normalized edge coefficient for i.i.d. weights from ``dist``.

    Equals (sqrt(E[w^2]) / mu) * nu_p(sqrt(E[w^2]) * gammas, betas); both
    sides are computed independently, the identity is a test target.
    """
    mu = dist.mean()
    if mu == 0.0:
        raise PreconditionError("normalization requires nonzero mean weight")
    m2 = dist.second_moment()
    if m2 <= 0:
        raise PreconditionError("requires a positive second moment")
    gammas = np.asarray(gammas, dtype=float)
    betas = np.asarray(betas, dtype=float)
    phase = _kernel_angles(gammas)
    g = g_table(betas)
    table = initial_h(gammas.size)
    for _ in range(gammas.size):
        table = h_iterate_limit(m2, phase, g, table)
    u = _root_weight(g, table)
    val = 1j * m2 / (2.0 * mu) * _bilinear(u, dot_matrix(phase))
    return _as_real(val, "theta_p")


def expected_energy_p_finite(N: int, D: int, dist: WeightDistribution,
                             gammas, betas) -> float:
    """Expected depth-p energy over i.i.d. weights on a (D+1)-regular graph.

    Exact whenever the graph has girth > 2p+1; no graph argument is
    needed because the expectation depends only on the local trees.
    """
    mu = dist.mean()
    gammas = np.asarray(gammas, dtype=float)
    betas = np.asarray(betas, dtype=float)
    if gammas.size != betas.size:
        raise ValueError("gammas and betas must have equal length")
    phase = _kernel_angles(gammas)
    g = g_table(betas)
    table = initial_h(gammas.size)
    for _ in range(gammas.size):
        table = h_iterate_finite(D, dist, phase, g, table)
    u = _root_weight(g, table)
    sin_kernel = dist.w_sin_expectation(dot_matrix(phase))
    ezz = -1j * _bilinear(u, sin_kernel)
    energy = 0.25 * N * (D + 1) * (mu - ezz)
    return _as_real(energy, "expected energy")


def sk_limit_energy(gammas, betas) -> float:
    """Limiting fully-connected Gaussian-coupling energy coefficient.

    Identical to :func:`nu_p`; the fully-connected model with standard
    normal couplings shares the tree limit, so no separate recursion is
    implemented.
    """
    return nu_p(gammas, betas)

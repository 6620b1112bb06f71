"""Exact QAOA simulation.

Two register types: a full 2^n statevector driven by the transverse-field
mixer, and a Hamming-weight-k sector state driven by the ring XY mixer
from the Dicke initial state.  The circuit convention is

    |gamma, beta> = e^{-i beta_p B} e^{-i gamma_p C} ... e^{-i beta_1 B} e^{-i gamma_1 C} |s>

with C the diagonal cost operator (cost values as given, no extra
factors) and e^{-i beta X} = [[cos b, -i sin b], [-i sin b, cos b]] per
qubit.  Under this convention the depth-1 MaxCut energy on triangle-free
graphs is maximized at beta = pi/8; parameters quoted in the doubled
"table" convention are halved in beta on entry (see
:func:`wqaoa.closed_form.convert_beta`).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse

from .errors import CapacityError, NumericalError
from .polynomials import MAX_EXACT_QUBITS, SpinPolynomial, _evaluate_indices, cost_vector

__all__ = [
    "QaoaParams",
    "StateVector",
    "SubspaceState",
    "uniform_state",
    "dicke_state",
    "apply_phase",
    "apply_x_mixer",
    "apply_xy_ring",
    "xy_ring_operator",
    "qaoa_state",
    "qaoa_energy",
    "landscape_grid",
    "write_landscape_csv",
]

MAX_SECTOR_DIM = 2_000_000


@dataclass(frozen=True)
class QaoaParams:
    """Depth-p parameter set with an explicit angle convention."""

    gammas: tuple[float, ...]
    betas: tuple[float, ...]
    convention: str = "closed-form"  # or "table"

    def __post_init__(self) -> None:
        if len(self.gammas) != len(self.betas):
            raise ValueError("gamma and beta vectors must have equal length")
        if self.convention not in ("closed-form", "table"):
            raise ValueError(f"unknown convention {self.convention!r}")
        object.__setattr__(self, "gammas", tuple(float(g) for g in self.gammas))
        object.__setattr__(self, "betas", tuple(float(b) for b in self.betas))

    @property
    def p(self) -> int:
        return len(self.gammas)

    def to_closed_form(self) -> "QaoaParams":
        """Convert to the simulator's native convention (beta halves)."""
        if self.convention == "closed-form":
            return self
        return QaoaParams(self.gammas, tuple(b / 2.0 for b in self.betas), "closed-form")

    def to_table(self) -> "QaoaParams":
        if self.convention == "table":
            return self
        return QaoaParams(self.gammas, tuple(2.0 * b for b in self.betas), "table")


class StateVector:
    """Full-register state: 2^n complex amplitudes, bit j = variable j."""

    __slots__ = ("n", "amplitudes")

    def __init__(self, n: int, amplitudes: np.ndarray):
        if n > MAX_EXACT_QUBITS:
            raise CapacityError(f"statevector needs n <= {MAX_EXACT_QUBITS}, got {n}")
        if amplitudes.shape != (1 << n,):
            raise ValueError("amplitude array has wrong length")
        self.n = n
        self.amplitudes = np.asarray(amplitudes, dtype=complex)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def copy(self) -> "StateVector":
        return StateVector(self.n, self.amplitudes.copy())


class SubspaceState:
    """State restricted to the Hamming-weight-k sector of n qubits."""

    __slots__ = ("n", "k", "basis", "amplitudes")

    def __init__(self, n: int, k: int, basis: np.ndarray, amplitudes: np.ndarray):
        self.n = n
        self.k = k
        self.basis = basis
        self.amplitudes = np.asarray(amplitudes, dtype=complex)
        if self.basis.shape != self.amplitudes.shape:
            raise ValueError("basis/amplitude length mismatch")

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def copy(self) -> "SubspaceState":
        return SubspaceState(self.n, self.k, self.basis, self.amplitudes.copy())


def uniform_state(n: int) -> StateVector:
    """|+>^n, the transverse-field mixer's ground state."""
    dim = 1 << n
    return StateVector(n, np.full(dim, 1.0 / math.sqrt(dim), dtype=complex))


def sector_basis(n: int, k: int) -> np.ndarray:
    """Sorted basis indices of Hamming weight k (ascending integers)."""
    if not 0 < k < n:
        raise ValueError("need 0 < k < n")
    if n > MAX_EXACT_QUBITS:
        raise CapacityError(f"sector enumeration needs n <= {MAX_EXACT_QUBITS}")
    if math.comb(n, k) > MAX_SECTOR_DIM:
        raise CapacityError(f"sector dimension C({n},{k}) exceeds {MAX_SECTOR_DIM}")
    idx = np.arange(1 << n, dtype=np.uint64)
    return idx[np.bitwise_count(idx) == k]


def dicke_state(n: int, k: int) -> SubspaceState:
    """Uniform superposition over all weight-k basis states."""
    basis = sector_basis(n, k)
    dim = basis.size
    return SubspaceState(n, k, basis, np.full(dim, 1.0 / math.sqrt(dim), dtype=complex))


def apply_phase(state: StateVector | SubspaceState, costvec: np.ndarray, gamma: float) -> None:
    """In-place e^{-i gamma C} for a diagonal cost; norm preserved exactly."""
    if costvec.shape != state.amplitudes.shape:
        raise ValueError("cost vector length does not match state dimension")
    state.amplitudes *= np.exp(-1j * gamma * costvec)


def apply_x_mixer(state: StateVector, beta: float) -> None:
    """In-place e^{-i beta sum_j X_j} on a full-register state."""
    c, s = math.cos(beta), math.sin(beta)
    amps = state.amplitudes
    for j in range(state.n):
        view = amps.reshape(1 << (state.n - 1 - j), 2, 1 << j)
        a0 = view[:, 0, :].copy()
        a1 = view[:, 1, :]
        view[:, 0, :] = c * a0 - 1j * s * a1
        view[:, 1, :] = c * a1 - 1j * s * a0


def _ring_edges(n: int) -> list[tuple[int, int]]:
    edges = {(min(j, (j + 1) % n), max(j, (j + 1) % n)) for j in range(n)}
    return sorted(edges)


def xy_ring_operator(n: int, k: int) -> tuple[scipy.sparse.csr_matrix, np.ndarray]:
    """Ring XY mixer B = 1/2 sum_j (X_j X_{j+1} + Y_j Y_{j+1}) in the sector.

    Returns the real symmetric sector matrix and the sector basis.  B
    conserves Hamming weight, so this restriction is exact.
    """
    basis = sector_basis(n, k)
    rows: list[np.ndarray] = []
    cols: list[np.ndarray] = []
    for a, b in _ring_edges(n):
        mask = np.uint64((1 << a) | (1 << b))
        bits_a = (basis >> np.uint64(a)) & np.uint64(1)
        bits_b = (basis >> np.uint64(b)) & np.uint64(1)
        act = np.nonzero(bits_a != bits_b)[0]
        partner = basis[act] ^ mask
        rows.append(act)
        cols.append(np.searchsorted(basis, partner))
    dim = basis.size
    if rows:
        r = np.concatenate(rows)
        c = np.concatenate(cols)
        data = np.ones(r.size)
        mat = scipy.sparse.coo_matrix((data, (r, c)), shape=(dim, dim)).tocsr()
    else:
        mat = scipy.sparse.csr_matrix((dim, dim))
    return mat, basis


def _lanczos_expm_multiply(op, v: np.ndarray, scale: complex, tol: float,
                           max_dim: int = 40) -> np.ndarray:
    """Approximate exp(scale * op) @ v by a Lanczos subspace method.

    ``op`` must be real symmetric (sparse).  Full reorthogonalization; the
    a-posteriori estimate |T[k,k-1] * y[k-1]| drives early exit.
    """
    nrm = np.linalg.norm(v)
    if nrm == 0.0:
        return v.copy()
    m = min(max_dim, v.size)
    V = np.zeros((v.size, m), dtype=complex)
    alphas = np.zeros(m)
    offs = np.zeros(m)
    V[:, 0] = v / nrm
    k_used = 0
    for k in range(m):
        w = op @ V[:, k]
        alphas[k] = float(np.real(np.vdot(V[:, k], w)))
        w = w - alphas[k] * V[:, k]
        if k > 0:
            w = w - offs[k - 1] * V[:, k - 1]
        # full reorthogonalization (subspace is tiny)
        w = w - V[:, : k + 1] @ (V[:, : k + 1].conj().T @ w)
        b = np.linalg.norm(w)
        k_used = k + 1
        T = np.diag(alphas[:k_used]) + np.diag(offs[: k_used - 1], 1) + np.diag(offs[: k_used - 1], -1)
        y = scipy.linalg.expm(scale * T)[:, 0]
        if b < 1e-14:  # invariant subspace: result exact
            return nrm * (V[:, :k_used] @ y)
        if abs(b * y[-1]) < tol:
            return nrm * (V[:, :k_used] @ y)
        if k + 1 < m:
            offs[k] = b
            V[:, k + 1] = w / b
    raise NumericalError(
        f"Lanczos exponential did not reach tolerance {tol} within {m} vectors"
    )


def apply_xy_ring(state: SubspaceState, beta: float,
                  operator: scipy.sparse.csr_matrix | None = None,
                  tol: float = 1e-12) -> None:
    """In-place exact e^{-i beta B} with the ring XY mixer, sector-restricted.

    Uses Lanczos exponential-times-vector with time substeps sized so each
    substep converges well inside the 40-vector budget; falls back to a
    dense exponential for sector dimension <= 1024 if Lanczos fails.
    """
    if operator is None:
        operator, basis = xy_ring_operator(state.n, state.k)
        if not np.array_equal(basis, state.basis):
            raise ValueError("state basis does not match sector basis")
    dim = state.basis.size
    if dim <= 64:
        u = scipy.linalg.expm(-1j * beta * operator.toarray())
        state.amplitudes = u @ state.amplitudes
        return
    # substeps keep ||beta B / steps|| modest for fast Krylov convergence
    norm_bound = max(1.0, float(np.abs(operator).sum(axis=1).max()))
    steps = max(1, math.ceil(abs(beta) * norm_bound / 8.0))
    try:
        amps = state.amplitudes
        for _ in range(steps):
            amps = _lanczos_expm_multiply(operator, amps, -1j * beta / steps, tol / steps)
        state.amplitudes = amps
    except NumericalError:
        if dim > 1024:
            raise
        u = scipy.linalg.expm(-1j * beta * operator.toarray())
        state.amplitudes = u @ state.amplitudes


def qaoa_state(poly: SpinPolynomial, params: QaoaParams, mixer: str = "x",
               k: int | None = None) -> StateVector | SubspaceState:
    """Prepare the QAOA state for the given cost polynomial.

    ``mixer="x"`` starts from |+>^n; ``mixer="xy"`` starts from the Dicke
    state of weight ``k`` and stays in that sector exactly.
    """
    params = params.to_closed_form()
    if mixer == "x":
        state: StateVector | SubspaceState = uniform_state(poly.n)
        costs = cost_vector(poly)
        for g, b in zip(params.gammas, params.betas):
            apply_phase(state, costs, g)
            apply_x_mixer(state, b)
        return state
    if mixer == "xy":
        if k is None:
            raise ValueError("xy mixer requires the Hamming weight k")
        op, basis = xy_ring_operator(poly.n, k)
        state = SubspaceState(poly.n, k, basis,
                              np.full(basis.size, 1.0 / math.sqrt(basis.size), dtype=complex))
        costs = _evaluate_indices(poly, basis)
        for g, b in zip(params.gammas, params.betas):
            apply_phase(state, costs, g)
            apply_xy_ring(state, b, operator=op)
        return state
    raise ValueError(f"unknown mixer {mixer!r}")


def qaoa_energy(poly: SpinPolynomial, params: QaoaParams, mixer: str = "x",
                k: int | None = None) -> float:
    """Expectation of the cost polynomial in the QAOA state."""
    state = qaoa_state(poly, params, mixer, k)
    if mixer == "x":
        costs = cost_vector(poly)
    else:
        costs = _evaluate_indices(poly, state.basis)
    return float(np.real(np.sum(state.probabilities() * costs)))


def energy_callable(poly: SpinPolynomial, mixer: str = "x", k: int | None = None):
    """Cached energy evaluator for optimizer loops.

    Precomputes the cost vector (and sector operator for the xy mixer)
    once; the returned function maps a closed-form parameter vector
    ``(g_1..g_p, b_1..b_p)`` to the energy.
    """
    if mixer == "x":
        costs = cost_vector(poly)
        dim = costs.size

        def energy(x: np.ndarray) -> float:
            x = np.asarray(x, dtype=float)
            p = x.size // 2
            state = StateVector(poly.n, np.full(dim, 1.0 / math.sqrt(dim), dtype=complex))
            for g, b in zip(x[:p], x[p:]):
                apply_phase(state, costs, float(g))
                apply_x_mixer(state, float(b))
            return float(np.real(np.sum(state.probabilities() * costs)))

        return energy
    if mixer == "xy":
        if k is None:
            raise ValueError("xy mixer requires the Hamming weight k")
        op, basis = xy_ring_operator(poly.n, k)
        costs = _evaluate_indices(poly, basis)
        dim = basis.size

        def energy(x: np.ndarray) -> float:
            x = np.asarray(x, dtype=float)
            p = x.size // 2
            state = SubspaceState(poly.n, k, basis,
                                  np.full(dim, 1.0 / math.sqrt(dim), dtype=complex))
            for g, b in zip(x[:p], x[p:]):
                apply_phase(state, costs, float(g))
                apply_xy_ring(state, float(b), operator=op)
            return float(np.real(np.sum(state.probabilities() * costs)))

        return energy
    raise ValueError(f"unknown mixer {mixer!r}")


def landscape_grid(poly: SpinPolynomial, mixer: str, gamma_values: np.ndarray,
                   beta_values: np.ndarray, k: int | None = None,
                   convention: str = "closed-form") -> np.ndarray:
    """Depth-1 energy over a parameter grid; rows index beta, columns gamma."""
    fn = energy_callable(poly, mixer, k)
    grid = np.empty((len(beta_values), len(gamma_values)))
    for i, b in enumerate(beta_values):
        b_cf = b / 2.0 if convention == "table" else float(b)
        for j, g in enumerate(gamma_values):
            grid[i, j] = fn(np.array([float(g), b_cf]))
    return grid


def write_landscape_csv(path, gamma_values, beta_values, grid: np.ndarray) -> None:
    """Landscape CSV: first row gamma axis, first column beta axis."""
    def fmt(x: float) -> str:
        return format(float(x), ".12g")

    with open(path, "w", encoding="utf-8") as fh:
        fh.write("," + ",".join(fmt(g) for g in gamma_values) + "\n")
        for b, row in zip(beta_values, grid):
            fh.write(fmt(b) + "," + ",".join(fmt(v) for v in row) + "\n")

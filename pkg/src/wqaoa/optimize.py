"""Derivative-free bound-constrained minimization.

A model-based trust-region method: quadratic models are fit by ridge
least squares to a coordinate stencil plus recent evaluation history, the
model is minimized over the trust box by projected gradient descent, and
the trust radius adapts to the agreement between model and objective.
No randomness anywhere: iteration counts are exactly reproducible for a
deterministic objective.

The trust geometry is expressed in units of the per-coordinate initial
radius, so rescaling a coordinate of the objective together with its
start, bounds and initial radius reproduces the same iterates (up to the
coordinate scale).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
import scipy.linalg
import scipy.optimize

__all__ = ["OptimizerRun", "minimize", "multistart_minimize"]

_RHO_GOOD = 0.75
_RHO_BAD = 0.25
_RADIUS_MAX_FACTOR = 1e3


@dataclass(frozen=True)
class OptimizerRun:
    """Record of one local optimization."""

    x0: tuple[float, ...]
    x: tuple[float, ...]
    fun: float
    n_evals: int
    trace: tuple[tuple[tuple[float, ...], float], ...]
    reason: str  # "xtol" | "ftol" | "max_evals"
    method: str = "quadratic-trust-region"

    def best_so_far(self) -> np.ndarray:
        """Running minimum over the evaluation trace (weakly decreasing)."""
        return np.minimum.accumulate([f for _, f in self.trace])


def _fit_quadratic(center_f: float, spts: np.ndarray, fvals: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Ridge least-squares quadratic in scaled step coordinates.

    Returns (gradient, hessian); the constant is a free nuisance term.
    """
    d = spts.shape[1]
    n_cross = d * (d - 1) // 2
    cols = [np.ones(len(spts))]
    cols.extend(spts[:, i] for i in range(d))
    cols.extend(0.5 * spts[:, i] ** 2 for i in range(d))
    for i in range(d):
        for j in range(i + 1, d):
            cols.append(spts[:, i] * spts[:, j])
    A = np.column_stack(cols)
    y = fvals - center_f
    n_coef = A.shape[1]
    lam = 1e-10
    reg = np.sqrt(lam) * np.eye(n_coef)
    reg[0, 0] = 0.0  # constant not penalized
    coef, *_ = np.linalg.lstsq(np.vstack([A, reg]), np.concatenate([y, np.zeros(n_coef)]), rcond=None)
    grad = coef[1 : 1 + d]
    hess = np.zeros((d, d))
    hess[np.diag_indices(d)] = coef[1 + d : 1 + 2 * d]
    idx = 1 + 2 * d
    for i in range(d):
        for j in range(i + 1, d):
            hess[i, j] = hess[j, i] = coef[idx]
            idx += 1
    assert idx == 1 + 2 * d + n_cross
    return grad, hess


def _minimize_model_on_box(grad: np.ndarray, hess: np.ndarray, lo: np.ndarray,
                           hi: np.ndarray) -> np.ndarray:
    """Minimize the model quadratic over the trust box.

    If the Hessian is positive definite and the Newton point is interior,
    that point is exact.  Otherwise quasi-Newton descent from a few
    deterministic starts; ill-conditioned models are the norm here, so a
    plain projected gradient would be far too slow.
    """

    def fun(s):
        hs = hess @ s
        return float(grad @ s + 0.5 * s @ hs), grad + hs

    starts = [np.zeros_like(grad)]
    try:
        factor = scipy.linalg.cho_factor(hess)
        s_newton = -scipy.linalg.cho_solve(factor, grad)
        if np.all(s_newton >= lo) and np.all(s_newton <= hi):
            return s_newton
        starts.append(np.clip(s_newton, lo, hi))
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError):
        pass
    starts.append(np.clip(np.where(grad > 0, lo, hi), lo, hi))

    best_s = starts[0]
    best_m = fun(best_s)[0]
    for s0 in starts:
        res = scipy.optimize.minimize(
            fun, s0, jac=True, method="L-BFGS-B", bounds=list(zip(lo, hi)),
            options={"maxiter": 200, "ftol": 0.0, "gtol": 1e-14},
        )
        if res.fun < best_m:
            best_m = float(res.fun)
            best_s = np.clip(res.x, lo, hi)
    return best_s


def minimize(objective: Callable[[np.ndarray], float], x0, bounds=None,
             xtol: float = 1e-8, ftol: float = 1e-8, max_evals: int = 2000,
             initial_radius: float | Sequence[float] = 0.1) -> OptimizerRun:
    """Local bound-constrained minimization without derivatives.

    Terminates when the trust radius falls below ``xtol`` ("xtol"), when
    accepted improvements stay below ``ftol * (1 + |f|)`` twice in a row
    ("ftol"), or on the evaluation budget ("max_evals").  The returned
    value is never worse than ``objective(x0)``.
    """
    x0 = np.asarray(x0, dtype=float)
    d = x0.size
    r0 = np.broadcast_to(np.asarray(initial_radius, dtype=float), (d,)).astype(float)
    if np.any(r0 <= 0):
        raise ValueError("initial radius must be positive")
    if bounds is not None:
        lo = np.array([b[0] for b in bounds], dtype=float)
        hi = np.array([b[1] for b in bounds], dtype=float)
        if np.any(x0 < lo - 1e-15) or np.any(x0 > hi + 1e-15):
            raise ValueError("x0 must lie within bounds")
    else:
        lo = np.full(d, -np.inf)
        hi = np.full(d, np.inf)

    trace: list[tuple[tuple[float, ...], float]] = []
    cache: dict[tuple[float, ...], float] = {}

    def eval_at(x: np.ndarray) -> float:
        key = tuple(float(v) for v in x)
        if key in cache:
            return cache[key]
        f = float(objective(np.array(key)))
        cache[key] = f
        trace.append((key, f))
        return f

    xc = np.clip(x0, lo, hi)
    fc = eval_at(xc)
    delta = 1.0  # in units of r0
    reason = "max_evals"
    ftol_strikes = 0

    while len(trace) < max_evals:
        # fully poised stencil at the current center and radius: axis pairs
        # for gradient/diagonal, one diagonal point per coordinate pair for
        # the cross terms (cache makes reuse free)
        pts = [xc]
        for i in range(d):
            for sgn in (1.0, -1.0):
                xi = xc.copy()
                xi[i] = min(hi[i], max(lo[i], xc[i] + sgn * delta * r0[i]))
                if abs(xi[i] - xc[i]) > 1e-300:
                    pts.append(xi)
        for i in range(d):
            for j in range(i + 1, d):
                for sgn in (1.0, -1.0):
                    xi = xc.copy()
                    xi[i] = min(hi[i], max(lo[i], xc[i] + sgn * delta * r0[i]))
                    xi[j] = min(hi[j], max(lo[j], xc[j] + sgn * delta * r0[j]))
                    if abs(xi[i] - xc[i]) > 1e-300 and abs(xi[j] - xc[j]) > 1e-300:
                        pts.append(xi)
                        break
        for xi in pts:
            if len(trace) >= max_evals:
                break
            eval_at(xi)
        if len(trace) >= max_evals:
            break

        # model from the poised stencil alone: history points carry
        # higher-order error that wrecks near-singular Hessian fits
        chosen: list[tuple[np.ndarray, float]] = []
        seen: set[tuple[float, ...]] = set()
        for q in pts:
            key = tuple(float(v) for v in q)
            if key in seen:
                continue
            seen.add(key)
            chosen.append(((np.array(key) - xc) / (delta * r0), cache[key]))
        spts = np.array([s for s, _ in chosen])
        fvals = np.array([f for _, f in chosen])
        grad, hess = _fit_quadratic(fc, spts, fvals)

        box_lo = np.maximum(-1.0, (lo - xc) / (delta * r0))
        box_hi = np.minimum(1.0, (hi - xc) / (delta * r0))
        s_scaled = _minimize_model_on_box(grad, hess, box_lo, box_hi)
        pred = -(grad @ s_scaled + 0.5 * s_scaled @ hess @ s_scaled)

        # ftol is relative to |f|, matching common gradient-free stoppers
        f_floor = max(ftol * abs(fc), 1e-300)
        if pred <= f_floor:
            if delta * float(np.max(r0)) <= xtol:
                reason = "xtol"
                break
            # no progress visible at this resolution: drop a whole level
            delta *= 0.1
            continue

        x_new = np.clip(xc + s_scaled * delta * r0, lo, hi)
        f_new = eval_at(x_new)
        rho = (fc - f_new) / pred
        if f_new < fc:
            improvement = fc - f_new
            xc, fc = x_new, f_new
            if improvement <= ftol * abs(fc):
                ftol_strikes += 1
                if ftol_strikes >= 2:
                    reason = "ftol"
                    break
            else:
                ftol_strikes = 0
        if rho >= _RHO_GOOD:
            delta = min(delta * 2.0, _RADIUS_MAX_FACTOR)
        elif rho < _RHO_BAD:
            delta *= 0.5
        if delta * float(np.max(r0)) <= xtol:
            reason = "xtol"
            break

    best_key, best_f = min(cache.items(), key=lambda kv: kv[1])
    return OptimizerRun(
        x0=tuple(float(v) for v in x0),
        x=best_key,
        fun=best_f,
        n_evals=len(trace),
        trace=tuple(trace),
        reason=reason,
    )


def multistart_minimize(objective: Callable[[np.ndarray], float],
                        starts: Sequence[Sequence[float]], **kwargs) -> OptimizerRun:
    """Run :func:`minimize` from every start; return the best run.

    Ties break toward the earlier start, so results are deterministic for
    a fixed start list.
    """
    if len(starts) == 0:
        raise ValueError("need at least one start")
    best: OptimizerRun | None = None
    for s in starts:
        run = minimize(objective, np.asarray(s, dtype=float), **kwargs)
        if best is None or run.fun < best.fun:
            best = run
    assert best is not None
    return best

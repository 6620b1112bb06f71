"""Edge-weight distributions and their trigonometric expectations.

Six families are supported: uniform on [0,1] ("uniform-plus"), uniform on
[-1,1] ("uniform-sym"), exponential(lambda), standard Cauchy, normal(mu,
sigma) and a point mass.  Besides sampling and moments, each family exposes
the exact expectations E[cos(w*g)] and E[w*sin(w*g)] that the closed-form
energy and the tree recursion consume.  Cauchy has a characteristic
function but no moments, so operations requiring moments reject it.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping

import numpy as np

from .errors import DegenerateScaleError, MomentError

__all__ = [
    "WeightDistribution",
    "MomentSummary",
    "uniform_plus",
    "uniform_sym",
    "exponential",
    "cauchy",
    "normal",
    "point_mass",
    "distribution_from_config",
    "empirical_scale",
    "empirical_moments",
]

_KINDS = ("uniform-plus", "uniform-sym", "exponential", "cauchy", "normal", "point-mass")


@dataclass(frozen=True)
class MomentSummary:
    """First and second moments with provenance."""

    mean: float
    second_moment: float
    source: str  # "analytic" | "empirical"

    def __post_init__(self) -> None:
        if self.source == "analytic" and self.second_moment < self.mean**2 - 1e-12:
            raise ValueError("second moment below mean^2")


@dataclass(frozen=True)
class WeightDistribution:
    """Immutable descriptor of a weight distribution.

    Use the module-level factories (``exponential(0.2)`` etc.) rather than
    constructing directly.
    """

    kind: str
    a: float = 0.0  # lambda / mu / c / location, by kind
    b: float = 0.0  # sigma / scale, by kind

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown distribution kind {self.kind!r}")
        if self.kind == "exponential" and self.a <= 0:
            raise ValueError("exponential rate must be positive")
        if self.kind == "normal" and self.b <= 0:
            raise ValueError("normal sigma must be positive")
        if self.kind == "cauchy" and self.b <= 0:
            raise ValueError("cauchy scale must be positive")

    # -- moments ----------------------------------------------------------

    @property
    def has_moments(self) -> bool:
        return self.kind != "cauchy"

    def mean(self) -> float:
        if self.kind == "uniform-plus":
            return 0.5
        if self.kind == "uniform-sym":
            return 0.0
        if self.kind == "exponential":
            return 1.0 / self.a
        if self.kind == "normal":
            return self.a
        if self.kind == "point-mass":
            return self.a
        raise MomentError("cauchy distribution has no mean")

    def second_moment(self) -> float:
        if self.kind == "uniform-plus":
            return 1.0 / 3.0
        if self.kind == "uniform-sym":
            return 1.0 / 3.0
        if self.kind == "exponential":
            return 2.0 / self.a**2
        if self.kind == "normal":
            return self.a**2 + self.b**2
        if self.kind == "point-mass":
            return self.a**2
        raise MomentError("cauchy distribution has no second moment")

    def moment_summary(self) -> MomentSummary:
        return MomentSummary(self.mean(), self.second_moment(), "analytic")

    # -- sampling ----------------------------------------------------------

    def sample(self, rng: np.random.Generator, size: int | tuple[int, ...] | None = None):
        """Draw i.i.d. samples using the caller-owned generator."""
        if self.kind == "uniform-plus":
            return rng.uniform(0.0, 1.0, size)
        if self.kind == "uniform-sym":
            return rng.uniform(-1.0, 1.0, size)
        if self.kind == "exponential":
            return rng.exponential(1.0 / self.a, size)
        if self.kind == "cauchy":
            return self.a + self.b * rng.standard_cauchy(size)
        if self.kind == "normal":
            return rng.normal(self.a, self.b, size)
        if size is None:
            return self.a
        return np.full(size, self.a)

    # -- trigonometric expectations -----------------------------------------

    def cos_expectation(self, gamma):
        """E[cos(w*gamma)], exact per family; equals 1 at gamma = 0."""
        gamma = np.asarray(gamma, dtype=float)
        if self.kind in ("uniform-plus", "uniform-sym"):
            out = np.sinc(gamma / np.pi)
        elif self.kind == "exponential":
            lam2 = self.a**2
            out = lam2 / (lam2 + gamma**2)
        elif self.kind == "cauchy":
            out = np.exp(-self.b * np.abs(gamma)) * np.cos(self.a * gamma)
        elif self.kind == "normal":
            out = np.exp(-0.5 * self.b**2 * gamma**2) * np.cos(self.a * gamma)
        else:  # point-mass
            out = np.cos(self.a * gamma)
        return out if np.ndim(out) else float(out)

    def w_sin_expectation(self, gamma):
        """E[w*sin(w*gamma)], exact per family; odd in gamma.

        Satisfies d/dgamma E[cos(w*gamma)] = -E[w*sin(w*gamma)].
        """
        gamma = np.asarray(gamma, dtype=float)
        if self.kind in ("uniform-plus", "uniform-sym"):
            # (sin g - g cos g) / g^2 with a series guard near zero.
            small = np.abs(gamma) < 1e-4
            g_safe = np.where(small, 1.0, gamma)
            exact = (np.sin(g_safe) - g_safe * np.cos(g_safe)) / g_safe**2
            series = gamma / 3.0 - gamma**3 / 30.0
            out = np.where(small, series, exact)
        elif self.kind == "exponential":
            lam2 = self.a**2
            out = 2.0 * gamma * lam2 / (lam2 + gamma**2) ** 2
        elif self.kind == "normal":
            mu, sig = self.a, self.b
            out = np.exp(-0.5 * sig**2 * gamma**2) * (
                sig**2 * gamma * np.cos(mu * gamma) + mu * np.sin(mu * gamma)
            )
        elif self.kind == "point-mass":
            out = self.a * np.sin(self.a * gamma)
        else:
            raise MomentError("E[w sin(w*gamma)] undefined for cauchy weights")
        return out if np.ndim(out) else float(out)

    # -- config -------------------------------------------------------------

    def to_config(self) -> dict[str, Any]:
        if self.kind == "exponential":
            return {"kind": self.kind, "lambda": self.a}
        if self.kind == "normal":
            return {"kind": self.kind, "mu": self.a, "sigma": self.b}
        if self.kind == "point-mass":
            return {"kind": self.kind, "c": self.a}
        if self.kind == "cauchy":
            return {"kind": self.kind, "location": self.a, "scale": self.b}
        return {"kind": self.kind}

    def label(self) -> str:
        cfg = self.to_config()
        params = ",".join(f"{v:g}" for k, v in cfg.items() if k != "kind")
        return f"{self.kind}({params})" if params else self.kind


def uniform_plus() -> WeightDistribution:
    return WeightDistribution("uniform-plus")


def uniform_sym() -> WeightDistribution:
    return WeightDistribution("uniform-sym")


def exponential(lam: float) -> WeightDistribution:
    return WeightDistribution("exponential", a=lam)


def cauchy(location: float = 0.0, scale: float = 1.0) -> WeightDistribution:
    return WeightDistribution("cauchy", a=location, b=scale)


def normal(mu: float, sigma: float) -> WeightDistribution:
    return WeightDistribution("normal", a=mu, b=sigma)


def point_mass(c: float) -> WeightDistribution:
    return WeightDistribution("point-mass", a=c)


def distribution_from_config(cfg: Mapping[str, Any]) -> WeightDistribution:
    """Parse ``{"kind": "exponential", "lambda": 0.2}``-style config."""
    kind = cfg["kind"]
    if kind == "exponential":
        return exponential(float(cfg["lambda"]))
    if kind == "normal":
        return normal(float(cfg["mu"]), float(cfg["sigma"]))
    if kind == "point-mass":
        return point_mass(float(cfg["c"]))
    if kind == "cauchy":
        return cauchy(float(cfg.get("location", 0.0)), float(cfg.get("scale", 1.0)))
    if kind in ("uniform-plus", "uniform-sym"):
        return WeightDistribution(kind)
    raise ValueError(f"unknown distribution kind {kind!r}")


def empirical_scale(weights) -> float:
    """Root mean square of a non-empty weight list; the rescaling denominator."""
    w = np.asarray(weights, dtype=float)
    if w.size == 0:
        raise ValueError("empty weight list")
    ms = float(np.mean(w**2))
    if ms == 0.0:
        raise DegenerateScaleError("all weights are zero")
    return float(np.sqrt(ms))


def empirical_moments(weights) -> MomentSummary:
    w = np.asarray(weights, dtype=float)
    if w.size == 0:
        raise ValueError("empty weight list")
    return MomentSummary(float(np.mean(w)), float(np.mean(w**2)), "empirical")

"""Experiment configuration and deterministic seeding."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Any

import numpy as np

SCHEMA_VERSION = 1


def child_seed(*path: int) -> np.random.SeedSequence:
    """Seed sequence derived from a root seed and an index path.

    Deterministic and independent of execution order, so worker
    scheduling can never change results.
    """
    return np.random.SeedSequence([int(p) & 0xFFFFFFFFFFFFFFFF for p in path])


@dataclass(frozen=True)
class MaxcutBenchConfig:
    distributions: tuple[dict, ...] = (
        {"kind": "exponential", "lambda": 0.2},
        {"kind": "cauchy"},
    )
    n_values: tuple[int, ...] = (8, 10, 12)
    p_values: tuple[int, ...] = (1, 2, 3)
    instances_per_cell: int = 50
    multistart: int = 20
    max_evals: int = 4000
    xtol: float = 1e-6
    ftol: float = 1e-8
    seed: int = 7041
    threads: int = 1


@dataclass(frozen=True)
class PortfolioConfig:
    n_values: tuple[int, ...] = (7, 8, 9, 10, 11, 12, 13, 14)
    instances_per_n: int = 10
    q: float = 0.5
    xtol: float = 1e-8
    ftol: float = 1e-8
    max_evals: int = 20000
    initial_radius: float = 0.1
    value_tol: float = 1e-6
    seed: int = 9313
    threads: int = 1


@dataclass(frozen=True)
class ConcentrationConfig:
    distributions: tuple[dict, ...] = (
        {"kind": "uniform-plus"},
        {"kind": "normal", "mu": 1.0, "sigma": 0.5},
    )
    d_values: tuple[int, ...] = (2, 3, 5, 9)
    samples: int = 2000
    seed: int = 5150
    threads: int = 1


@dataclass(frozen=True)
class LandscapeConfig:
    n: int = 8
    q: float = 0.5
    gamma_min: float = -2.0
    gamma_max: float = 2.0
    beta_min: float = -1.5707963267948966
    beta_max: float = 1.5707963267948966
    resolution: int = 41
    seed: int = 404
    threads: int = 1


@dataclass(frozen=True)
class SkBoundsConfig:
    n_values: tuple[int, ...] = (8, 12, 16)
    mu_values: tuple[float, ...] = (-1.0, 0.0, 1.0)
    sigma: float = 1.0
    samples: int = 10000
    growth_n_values: tuple[int, ...] = (8, 12, 16, 20)
    growth_samples: int = 2000
    seed: int = 1923
    threads: int = 1


@dataclass(frozen=True)
class GenGraphsConfig:
    n_values: tuple[int, ...] = (8, 10, 12)
    instances_per_n: int = 10
    distribution: dict = field(default_factory=lambda: {"kind": "exponential", "lambda": 0.2})
    seed: int = 11
    threads: int = 1


_CONFIG_TYPES = {
    "bench-maxcut": MaxcutBenchConfig,
    "bench-portfolio": PortfolioConfig,
    "concentration": ConcentrationConfig,
    "landscape": LandscapeConfig,
    "sk-bounds": SkBoundsConfig,
    "gen-graphs": GenGraphsConfig,
}


def load_config(kind: str, path: str | Path | None = None,
                overrides: dict[str, Any] | None = None):
    """Defaults, overlaid with a JSON file, overlaid with CLI overrides."""
    cls = _CONFIG_TYPES[kind]
    cfg = cls()
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        fields = {k: _coerce(v) for k, v in data.items() if k in asdict(cfg)}
        cfg = replace(cfg, **fields)
    if overrides:
        cfg = replace(cfg, **{k: _coerce(v) for k, v in overrides.items() if v is not None})
    return cfg


def _coerce(value):
    if isinstance(value, list):
        return tuple(_coerce(v) for v in value)
    return value

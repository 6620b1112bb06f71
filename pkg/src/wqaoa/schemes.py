"""Parameter setting rules that transfer fixed angles to weighted instances.

All three rules keep the mixer angles and rescale only the phase angles:

- method (i):   gamma = gamma_inf / sqrt((D - 1) * mean(w^2))
- method (ii):  gamma = gamma_inf * arctan(1 / sqrt(D - 1)) / sqrt(mean(w^2))
- baseline:     gamma = gamma_median * arctan(1 / sqrt(D - 1)) / mean(|w|)

where D is the average degree and the moments are empirical over the
instance's edge weights.  The reference angles ship as a JSON table in
the doubled "table" convention; scheme outputs inherit that tag and the
simulator converts on entry.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from typing import Mapping

import numpy as np

from .distributions import empirical_scale
from .errors import PreconditionError
from .graphs import WeightedGraph
from .simulator import QaoaParams

__all__ = [
    "InfParamTable",
    "default_table",
    "average_degree",
    "method_i",
    "method_ii",
    "baseline_ref9",
]


@dataclass(frozen=True)
class InfParamTable:
    """Fixed angles optimized on the infinite locally-tree-like ensemble.

    ``entries[p]`` holds (gammas, betas) vectors of length p; a p=1 entry
    must be present.
    """

    entries: Mapping[int, tuple[tuple[float, ...], tuple[float, ...]]]
    convention: str = "table"

    def __post_init__(self) -> None:
        if 1 not in self.entries:
            raise ValueError("table must contain a p=1 entry")
        for p, (gs, bs) in self.entries.items():
            if len(gs) != p or len(bs) != p:
                raise ValueError(f"entry p={p} has wrong vector lengths")
        if self.convention not in ("table", "closed-form"):
            raise ValueError(f"unknown convention {self.convention!r}")

    def params(self, p: int) -> QaoaParams:
        if p not in self.entries:
            raise KeyError(f"no table entry for p={p}")
        gs, bs = self.entries[p]
        return QaoaParams(tuple(gs), tuple(bs), self.convention)

    @property
    def depths(self) -> tuple[int, ...]:
        return tuple(sorted(self.entries))

    def to_json(self) -> str:
        return json.dumps({
            "convention": self.convention,
            "entries": {str(p): {"gamma": list(gs), "beta": list(bs)}
                        for p, (gs, bs) in sorted(self.entries.items())},
        }, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "InfParamTable":
        obj = json.loads(text)
        entries = {
            int(p): (tuple(map(float, e["gamma"])), tuple(map(float, e["beta"])))
            for p, e in obj["entries"].items()
        }
        return cls(entries=entries, convention=obj.get("convention", "table"))

    @classmethod
    def from_file(cls, path) -> "InfParamTable":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(fh.read())


def default_table() -> InfParamTable:
    """The packaged angle table (p = 1, 2, 3).

    The p=1 entry is (1, pi/4) in table convention; deeper entries were
    produced by multistart maximization of the infinite-size coefficient
    (see scripts/regenerate_inf_params.py in the repository).
    """
    text = resources.files("wqaoa.data").joinpath("inf_params.json").read_text()
    return InfParamTable.from_json(text)


def average_degree(g: WeightedGraph) -> float:
    """2|E|/n; the D used by all three rules."""
    if g.num_edges == 0:
        raise PreconditionError("average degree undefined for an empty edge set")
    return 2.0 * g.num_edges / g.n


def _check_degree(D: float) -> None:
    if D <= 1.0:
        raise PreconditionError(f"rules require average degree > 1, got {D}")


def method_i(g: WeightedGraph, table: InfParamTable, p: int) -> QaoaParams:
    """Direct square-root-degree rule."""
    D = average_degree(g)
    _check_degree(D)
    ref = table.params(p)
    scale = math.sqrt((D - 1.0)) * empirical_scale(g.weights)
    return QaoaParams(tuple(gam / scale for gam in ref.gammas), ref.betas, ref.convention)


def method_ii(g: WeightedGraph, table: InfParamTable, p: int) -> QaoaParams:
    """Arctan variant; closes the small-degree gap of method (i)."""
    D = average_degree(g)
    _check_degree(D)
    ref = table.params(p)
    factor = math.atan(1.0 / math.sqrt(D - 1.0)) / empirical_scale(g.weights)
    return QaoaParams(tuple(gam * factor for gam in ref.gammas), ref.betas, ref.convention)


def baseline_ref9(g: WeightedGraph, gamma_median, betas,
                  convention: str = "table") -> QaoaParams:
    """Prior-work baseline: mean absolute weight in the denominator.

    Finite for any weight sample (heavy tails included) because it uses
    only empirical first absolute moments.
    """
    D = average_degree(g)
    _check_degree(D)
    mean_abs = float(np.mean(np.abs(g.weights)))
    if mean_abs == 0.0:
        raise PreconditionError("mean absolute weight is zero")
    factor = math.atan(1.0 / math.sqrt(D - 1.0)) / mean_abs
    gamma_median = tuple(float(v) for v in np.atleast_1d(gamma_median))
    betas = tuple(float(v) for v in np.atleast_1d(betas))
    return QaoaParams(tuple(gm * factor for gm in gamma_median), betas, convention)

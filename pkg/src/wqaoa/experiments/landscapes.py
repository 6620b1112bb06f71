"""Depth-1 energy landscape grids for one portfolio instance."""
from __future__ import annotations

from pathlib import Path

import numpy as np

from ..polynomials import portfolio_poly, rescale_poly
from ..simulator import landscape_grid, write_landscape_csv
from .config import LandscapeConfig
from .instances import portfolio_instance
from .writers import write_csv


def flatness(grid: np.ndarray) -> float:
    """Relative spread of the landscape; higher means easier to navigate."""
    mean = float(np.mean(grid))
    return float(np.std(grid)) / max(abs(mean), 1e-300)


def emit_landscape(cfg: LandscapeConfig, out_dir: str | Path) -> dict:
    inst = portfolio_instance(cfg.n, 0, cfg.seed, q=cfg.q)
    poly = portfolio_poly(inst)
    rescaled, scale = rescale_poly(poly)
    gammas = np.linspace(cfg.gamma_min, cfg.gamma_max, cfg.resolution)
    betas = np.linspace(cfg.beta_min, cfg.beta_max, cfg.resolution)
    grid_orig = landscape_grid(poly, "xy", gammas, betas, k=inst.k)
    grid_resc = landscape_grid(rescaled, "xy", gammas, betas, k=inst.k)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_landscape_csv(out_dir / "landscape_original.csv", gammas, betas, grid_orig)
    write_landscape_csv(out_dir / "landscape_rescaled.csv", gammas, betas, grid_resc)
    write_csv(out_dir / "landscape_summary.csv",
              ("n", "budget", "scale", "flatness_original", "flatness_rescaled"),
              [(cfg.n, inst.k, scale, flatness(grid_orig), flatness(grid_resc))])
    return {
        "gammas": gammas, "betas": betas,
        "grid_original": grid_orig, "grid_rescaled": grid_resc,
        "scale": scale,
        "flatness_original": flatness(grid_orig),
        "flatness_rescaled": flatness(grid_resc),
    }

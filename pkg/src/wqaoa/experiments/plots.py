"""Matplotlib figures rendered next to the delimited outputs."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def save_gap_figure(median_rows, path: str | Path) -> None:
    """Grouped bars of median optimality gaps per (distribution, p)."""
    labels = [f"{d}\np={p}" for d, p, *_ in median_rows]
    base = [r[2] for r in median_rows]
    m1 = [r[3] for r in median_rows]
    m2 = [r[4] for r in median_rows]
    x = np.arange(len(labels))
    fig, ax = plt.subplots(figsize=(max(6.0, 1.1 * len(labels)), 4.0))
    ax.bar(x - 0.25, base, 0.25, label="baseline")
    ax.bar(x, m1, 0.25, label="method (i)")
    ax.bar(x + 0.25, m2, 0.25, label="method (ii)")
    ax.set_xticks(x, labels, fontsize=8)
    ax.set_ylabel("median optimality gap")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_profile_figure(profile_rows, path: str | Path) -> None:
    """Performance profile: fraction of instances solved vs iterations."""
    its = [r[0] for r in profile_rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.step(its, [r[1] for r in profile_rows], where="post", label="original")
    ax.step(its, [r[2] for r in profile_rows], where="post", label="rescaled")
    ax.set_xscale("log")
    ax.set_xlabel("objective evaluations")
    ax.set_ylabel("fraction of instances solved")
    ax.set_ylim(0, 1.02)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_landscape_figure(gammas, betas, grid, path: str | Path, title: str = "") -> None:
    fig, ax = plt.subplots(figsize=(5.2, 4.2))
    im = ax.pcolormesh(gammas, betas, grid, shading="auto", cmap="viridis")
    fig.colorbar(im, ax=ax, label="energy")
    ax.set_xlabel("gamma")
    ax.set_ylabel("beta")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_concentration_figure(rows, fits, path: str | Path) -> None:
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    by_dist: dict[str, list[tuple[int, float]]] = {}
    for dist, D, *_rest in rows:
        by_dist.setdefault(dist, []).append((D, _rest[-1]))
    for (dist, pts), fit in zip(by_dist.items(), fits):
        ds = np.array([p[0] for p in pts], dtype=float)
        rs = np.array([p[1] for p in pts])
        ax.loglog(ds, rs, "o", label=f"{dist} (slope {fit[1]:.2f})")
        ax.loglog(ds, np.exp(fit[2]) * ds ** fit[1], "--", alpha=0.6)
    ax.set_xlabel("D")
    ax.set_ylabel("relative std of energy")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_sk_figure(rows, path: str | Path) -> None:
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    mus = sorted({r[1] for r in rows})
    for mu in mus:
        sub = [r for r in rows if r[1] == mu]
        ns = [r[0] for r in sub]
        ax.errorbar(ns, [r[4] for r in sub], yerr=[3 * r[5] for r in sub],
                    fmt="o-", label=f"mu={mu:g}")
        ax.plot(ns, [r[3] for r in sub], "k--", alpha=0.5)
        ax.plot(ns, [r[6] for r in sub], "k:", alpha=0.5)
    ax.set_xlabel("N")
    ax.set_ylabel("E[max G]")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)

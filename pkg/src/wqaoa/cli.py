"""Command line entry point.

Subcommands: gen-graphs, bench-maxcut, bench-portfolio, landscape,
concentration, tree-eval, sk-bounds.  Every experiment takes
``--config`` (JSON overriding built-in defaults), ``--out``, ``--seed``
and ``--threads``; outputs are CSV/JSON-lines plus rendered figures
(``--no-plots`` suppresses the figures).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .distributions import distribution_from_config
from .experiments import config as cfgmod
from .experiments import (
    emit_landscape,
    run_concentration,
    run_maxcut_benchmark,
    run_portfolio_study,
    run_sk_bounds,
)
from .experiments.instances import benchmark_graph
from .experiments.writers import write_csv, write_jsonl
from .tree import expected_energy_p_finite, nu_p, theta_p_limit


def _common_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", type=str, default=None, help="JSON config file")
    sub.add_argument("--out", type=str, default=None, help="output directory")
    sub.add_argument("--seed", type=int, default=None, help="root RNG seed")
    sub.add_argument("--threads", type=int, default=None, help="worker processes")
    sub.add_argument("--no-plots", action="store_true", help="skip figure rendering")


def _load(kind: str, args) -> tuple:
    cfg = cfgmod.load_config(kind, args.config,
                             {"seed": args.seed, "threads": args.threads})
    out = Path(args.out) if args.out else Path("out") / kind
    out.mkdir(parents=True, exist_ok=True)
    return cfg, out


def _cmd_gen_graphs(args) -> int:
    cfg, out = _load("gen-graphs", args)
    dist = distribution_from_config(dict(cfg.distribution))
    records = []
    for n in cfg.n_values:
        for idx in range(cfg.instances_per_n):
            g = benchmark_graph(n, idx, dist, cfg.seed)
            records.append({
                "id": f"{dist.kind}-n{n}-i{idx}",
                "distribution": dist.to_config(),
                "graph": json.loads(g.to_json()),
            })
    path = write_jsonl(out / "graphs.jsonl", records)
    print(f"wrote {len(records)} graphs to {path}")
    return 0


def _cmd_bench_maxcut(args) -> int:
    cfg, out = _load("bench-maxcut", args)
    result = run_maxcut_benchmark(cfg, out)
    if not args.no_plots:
        from .experiments.plots import save_gap_figure
        save_gap_figure(result["medians"], out / "bench_gaps.png")
    for dist_label, p, g9, g1, g2 in result["medians"]:
        print(f"{dist_label:>22s} p={p}: baseline={g9:.4f} method-i={g1:.4f} method-ii={g2:.4f}")
    return 0


def _cmd_bench_portfolio(args) -> int:
    cfg, out = _load("bench-portfolio", args)
    result = run_portfolio_study(cfg, out)
    if not args.no_plots:
        from .experiments.plots import save_profile_figure
        save_profile_figure(result["profile"], out / "portfolio_profile.png")
    print(f"same-optimum fraction: {result['same_optimum_fraction']:.3f}")
    print(f"median iteration ratio (original/rescaled): {result['median_iteration_ratio']:.2f}")
    return 0


def _cmd_landscape(args) -> int:
    cfg, out = _load("landscape", args)
    result = emit_landscape(cfg, out)
    if not args.no_plots:
        from .experiments.plots import save_landscape_figure
        save_landscape_figure(result["gammas"], result["betas"],
                              result["grid_original"], out / "landscape_original.png",
                              "original objective")
        save_landscape_figure(result["gammas"], result["betas"],
                              result["grid_rescaled"], out / "landscape_rescaled.png",
                              "rescaled objective")
    print(f"scale={result['scale']:.6g} flatness original={result['flatness_original']:.4g} "
          f"rescaled={result['flatness_rescaled']:.4g}")
    return 0


def _cmd_concentration(args) -> int:
    cfg, out = _load("concentration", args)
    result = run_concentration(cfg, out)
    if not args.no_plots:
        from .experiments.plots import save_concentration_figure
        save_concentration_figure(result["rows"], result["fits"],
                                  out / "concentration.png")
    for dist_label, slope, _ in result["fits"]:
        print(f"{dist_label}: log-log slope {slope:.3f}")
    return 0


def _cmd_sk_bounds(args) -> int:
    cfg, out = _load("sk-bounds", args)
    result = run_sk_bounds(cfg, out)
    if not args.no_plots:
        from .experiments.plots import save_sk_figure
        save_sk_figure(result["rows"], out / "sk_bounds.png")
    for n, mu, _, lo, est, se, hi in result["rows"]:
        ok = lo - 3 * se <= est <= hi + 3 * se
        print(f"N={n} mu={mu:+.1f}: {lo:.2f} <= {est:.2f}+-{se:.2f} <= {hi:.2f} [{'ok' if ok else 'VIOLATION'}]")
    print(f"growth exponent (mu=0): {result['exponent']:.3f}")
    return 0


def _cmd_tree_eval(args) -> int:
    gammas = [float(v) for v in args.gammas.split(",")]
    betas = [float(v) for v in args.betas.split(",")]
    if len(gammas) != len(betas):
        print("gamma and beta lists must have equal length", file=sys.stderr)
        return 2
    rows = []
    nu = nu_p(gammas, betas)
    rows.append(("nu_p", len(gammas), "", nu))
    if args.dist:
        dist = distribution_from_config(json.loads(args.dist))
        theta = theta_p_limit(dist, gammas, betas)
        rows.append(("theta_p", len(gammas), dist.label(), theta))
        if args.D is not None:
            e = expected_energy_p_finite(args.n, args.D, dist, gammas, betas)
            rows.append((f"energy(N={args.n},D={args.D})", len(gammas), dist.label(), e))
    out = Path(args.out) if args.out else Path("out") / "tree-eval"
    out.mkdir(parents=True, exist_ok=True)
    write_csv(out / "tree_eval.csv", ("quantity", "p", "distribution", "value"), rows)
    for name, p, dist_label, val in rows:
        print(f"{name} p={p} {dist_label}: {val:.12g}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="wqaoa", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    for kind, fn in [
        ("gen-graphs", _cmd_gen_graphs),
        ("bench-maxcut", _cmd_bench_maxcut),
        ("bench-portfolio", _cmd_bench_portfolio),
        ("landscape", _cmd_landscape),
        ("concentration", _cmd_concentration),
        ("sk-bounds", _cmd_sk_bounds),
    ]:
        p = sub.add_parser(kind)
        _common_flags(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("tree-eval")
    p.add_argument("--gammas", type=str, required=True, help="comma-separated phase angles")
    p.add_argument("--betas", type=str, required=True, help="comma-separated mixer angles")
    p.add_argument("--dist", type=str, default=None, help='distribution JSON, e.g. {"kind":"exponential","lambda":1}')
    p.add_argument("--D", type=int, default=None, help="finite branching factor")
    p.add_argument("--n", type=int, default=14, help="vertex count for the finite energy")
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=_cmd_tree_eval)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

"""Benchmark harness: experiment runners behind the command line."""

from .concentration import run_concentration
from .landscapes import emit_landscape
from .maxcut import run_maxcut_benchmark
from .portfolio import run_portfolio_study
from .skruns import run_sk_bounds

__all__ = [
    "run_concentration",
    "emit_landscape",
    "run_maxcut_benchmark",
    "run_portfolio_study",
    "run_sk_bounds",
]

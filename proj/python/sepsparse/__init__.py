"""Projection and recovery for the separated sparsity model.

Supports are lists of 1-based indices; weight vectors are sequences of
non-negative floats.
"""

from ._sepsparse import (
    InfeasibleError,
    am_iht,
    bench,
    bench_config,
    bench_presets,
    brute_force_solve,
    default_measurements,
    dp_solve,
    dp_solve_2spike,
    dp_solve_unrestricted,
    empirical_rip,
    gen_poisson,
    gen_sensing,
    gen_uniform,
    head_project,
    is_feasible,
    objective,
    recover,
    squared_weights,
    strong_and_reduced,
    tail_project,
    tail_vector,
    topk_tail_project,
)

__all__ = [
    "InfeasibleError",
    "am_iht",
    "bench",
    "bench_config",
    "bench_presets",
    "brute_force_solve",
    "default_measurements",
    "dp_solve",
    "dp_solve_2spike",
    "dp_solve_unrestricted",
    "empirical_rip",
    "gen_poisson",
    "gen_sensing",
    "gen_uniform",
    "head_project",
    "is_feasible",
    "objective",
    "recover",
    "squared_weights",
    "strong_and_reduced",
    "tail_project",
    "tail_vector",
    "topk_tail_project",
]

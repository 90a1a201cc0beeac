"""Memcomputing-style continuous-time 3-SAT solver and benchmark toolkit."""

from ._core import (
    Clause,
    Cnf,
    DimacsError,
    DmmParams,
    FitError,
    FitResult,
    GenerationError,
    Histogram,
    Literal,
    MedianUndefinedError,
    SolveResult,
    Trajectory,
    barthel_type_probs,
    eval_clause,
    eval_cnf,
    fit_exponential,
    fit_inverse_gaussian,
    fit_scaling,
    gen_barthel,
    gen_xorsat,
    histogram,
    median_tts,
    jump_acceleration_model,
    nmtts,
    parse_dimacs,
    run_seed,
    solve,
    write_dimacs,
)
from ._core import __version__

__all__ = [
    "Clause",
    "Cnf",
    "DimacsError",
    "DmmParams",
    "FitError",
    "FitResult",
    "GenerationError",
    "Histogram",
    "Literal",
    "MedianUndefinedError",
    "SolveResult",
    "Trajectory",
    "__version__",
    "barthel_type_probs",
    "eval_clause",
    "eval_cnf",
    "fit_exponential",
    "fit_inverse_gaussian",
    "fit_scaling",
    "gen_barthel",
    "gen_xorsat",
    "histogram",
    "median_tts",
    "jump_acceleration_model",
    "nmtts",
    "parse_dimacs",
    "run_seed",
    "solve",
    "write_dimacs",
]

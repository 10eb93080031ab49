"""Simulation of random LR fuzzy intervals and fuzzy random samples."""

__version__ = "0.1.0"

from .dist import (  # noqa: E402
    Constant,
    DegenerateTruncation,
    Exponential,
    Normal,
    TruncatedDistribution,
    Uniform,
    truncate,
)
from .edf import EmpiricalCDF  # noqa: E402
from .fuzzy import LimitLRFI, PiecewiseLRFI, as_trapezoid, validate  # noqa: E402
from .simulate import (  # noqa: E402
    FuzzyModelSpec,
    InjectedDraws,
    gen_limit,
    gen_piecewise,
    gen_sample,
)
from .diagnostics import (  # noqa: E402
    ConvergenceReport,
    convergence_study,
    ks_statistic,
    sup_distance,
)

__all__ = [
    "Constant",
    "DegenerateTruncation",
    "Exponential",
    "Normal",
    "TruncatedDistribution",
    "Uniform",
    "truncate",
    "EmpiricalCDF",
    "LimitLRFI",
    "PiecewiseLRFI",
    "as_trapezoid",
    "validate",
    "FuzzyModelSpec",
    "InjectedDraws",
    "gen_limit",
    "gen_piecewise",
    "gen_sample",
    "ConvergenceReport",
    "convergence_study",
    "ks_statistic",
    "sup_distance",
]

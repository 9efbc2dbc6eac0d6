"""Adaptive Frank-Wolfe for relatively smooth convex minimization."""

from .bregman import (
    BregmanDivergence,
    NegativeEntropy,
    SquaredEuclidean,
    SvmQuartic,
    make_divergence,
)
from .errors import (
    BacktrackOverflow,
    BregfwError,
    ConfigError,
    DimensionMismatch,
    DomainError,
    Incompatible,
    InvalidCurvature,
    LabelError,
    MissingFStar,
    ParseError,
    ZeroGradient,
)
from .lmo import DiameterBound, FeasibleSet, L1Ball, L2Ball, UnitSimplex, diameter_bound, make_set
from .problems import (
    HingeSvm,
    Objective,
    PoissonKL,
    ProblemInstance,
    QuadraticTest,
    generate_poisson,
    load_svm_csv,
    make_random_quadratic,
    svm_ball_radius,
)
from .solver import (
    IterationRecord,
    Method,
    RunResult,
    SolverConfig,
    Violation,
    run,
    step_length,
    verify_run,
)

__version__ = "0.1.0"

__all__ = [
    "BregmanDivergence",
    "SquaredEuclidean",
    "NegativeEntropy",
    "SvmQuartic",
    "make_divergence",
    "FeasibleSet",
    "UnitSimplex",
    "L1Ball",
    "L2Ball",
    "DiameterBound",
    "diameter_bound",
    "make_set",
    "Objective",
    "QuadraticTest",
    "PoissonKL",
    "HingeSvm",
    "ProblemInstance",
    "generate_poisson",
    "load_svm_csv",
    "make_random_quadratic",
    "svm_ball_radius",
    "Method",
    "SolverConfig",
    "IterationRecord",
    "RunResult",
    "Violation",
    "step_length",
    "run",
    "verify_run",
    "BregfwError",
    "DomainError",
    "DimensionMismatch",
    "ZeroGradient",
    "InvalidCurvature",
    "BacktrackOverflow",
    "MissingFStar",
    "Incompatible",
    "ParseError",
    "LabelError",
    "ConfigError",
]

"""Exact and (1+eps)-approximate Pareto fronts for two-machine scheduling.

Jobs with integer processing times and delivery times run on two
identical parallel machines; the objectives are makespan and maximum
lateness.  `solve_exact` enumerates the exact Pareto front by a layered
dynamic program over job prefixes, `solve_fptas` trims each layer onto
an exact rational grid for a (1+eps) coverage guarantee, and both
reconstruct a witness schedule per front point.
"""

from .bench import (
    EpsResult,
    GenSpec,
    RunRecord,
    desk_families,
    generate_instance,
    paper_families,
    quality_metrics,
    run_suite,
    write_report,
)
from .exact import (
    DEFAULT_STATE_BUDGET,
    Layer,
    SolveResult,
    StateBudgetError,
    initial_layer,
    prune,
    reconstruct,
    solve_exact,
    successors,
)
from .fptas import (
    ClosenessViolation,
    Epsilon,
    GridParams,
    box_index,
    coverage_check,
    find_closeness_violation,
    find_coverage_violation,
    grid_params,
    parse_epsilon,
    solve_fptas,
    trim,
    verify_trim_closeness,
)
from .model import (
    MAX_MAGNITUDE,
    DpState,
    Front,
    Instance,
    Job,
    ParetoPoint,
    Schedule,
    build_schedule,
    dominates,
    evaluate_schedule,
    normalize,
    pareto_filter,
)
from .oracle import ORACLE_CAP, enumerate_front

__version__ = "0.1.0"

__all__ = [
    "MAX_MAGNITUDE",
    "DEFAULT_STATE_BUDGET",
    "ORACLE_CAP",
    "Job",
    "ParetoPoint",
    "Instance",
    "DpState",
    "Front",
    "Schedule",
    "Layer",
    "SolveResult",
    "StateBudgetError",
    "GridParams",
    "Epsilon",
    "ClosenessViolation",
    "GenSpec",
    "RunRecord",
    "EpsResult",
    "normalize",
    "evaluate_schedule",
    "dominates",
    "pareto_filter",
    "build_schedule",
    "initial_layer",
    "successors",
    "prune",
    "solve_exact",
    "reconstruct",
    "grid_params",
    "box_index",
    "trim",
    "solve_fptas",
    "parse_epsilon",
    "coverage_check",
    "find_coverage_violation",
    "verify_trim_closeness",
    "find_closeness_violation",
    "enumerate_front",
    "generate_instance",
    "quality_metrics",
    "run_suite",
    "desk_families",
    "paper_families",
    "write_report",
    "__version__",
]

"""Macro-operator learning for hill-climbing search (MICRO-HILLARY)."""
from .baselines import best_first, weighted_astar
from .core import (
    BudgetExceeded,
    Domain,
    EscapeExhausted,
    InvalidParameter,
    Macro,
    MacroSet,
    MicroHillaryError,
    Problem,
    Provenance,
    SearchStats,
    UnknownOperatorName,
    apply_macro,
    apply_operator,
    format_macro,
    macro_from_names,
)
from .domains import (
    cannibals_domain,
    grid_domain,
    hanoi_domain,
    make_domain,
    npuzzle_domain,
    npuzzle_random_solvable,
    npuzzle_solvable,
    stones_domain,
)
from .learner import (
    LearnerConfig,
    LearnReport,
    TrainingTrace,
    extract_macros,
    generate_training_problem,
    micro_hillary,
    parametric_micro_hillary,
)
from .solver import EscapeConfig, SolveOutcome, id_escape, ilb, lbfs, solve_problem

__version__ = "0.1.0"

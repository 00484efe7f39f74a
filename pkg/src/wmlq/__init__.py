"""Maximum-weight many-to-one assignment with lower and upper quotas.

Exact solvers (tree-decomposition DP, matching and f-factor reductions,
brute-force oracle), a greedy approximation, instance generators and a CLI.
"""

from .core import (
    BudgetExceeded,
    Infeasible,
    InfeasibleAssignment,
    Instance,
    PreconditionError,
    SolveResult,
    WMLQError,
    evaluate,
    is_feasible,
    simplify,
    simplify_with_map,
    validate,
)
from .greedy import solve_greedy
from .io import parse_instance, parse_solution, render_instance, render_solution
from .matching import (
    FFactorInstance,
    GeneralGraph,
    max_weight_f_factor,
    max_weight_matching,
    max_weight_perfect_matching,
)
from .oracle import brute_force
from .special import AlgorithmChoice, solve, solve_all_open, solve_degree2_posts, solve_u2
from .twdp import dp_solve

__version__ = "0.1.0"

__all__ = [
    "AlgorithmChoice", "BudgetExceeded", "FFactorInstance", "GeneralGraph", "Infeasible",
    "InfeasibleAssignment", "Instance", "PreconditionError", "SolveResult", "WMLQError",
    "brute_force", "dp_solve", "evaluate", "is_feasible", "max_weight_f_factor",
    "max_weight_matching", "max_weight_perfect_matching", "parse_instance", "parse_solution",
    "render_instance", "render_solution", "simplify", "simplify_with_map", "solve",
    "solve_all_open", "solve_degree2_posts", "solve_greedy", "solve_u2", "validate",
]

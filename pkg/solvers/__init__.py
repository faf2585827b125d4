"""
各群族的判定器与三值判定结果
"""

from solvers.config import Budget, SolverSettings, get_solver_settings, reset_solver_settings
from solvers.dispatcher import SolveMethod, solve, verify_certificate
from solvers.verdicts import Outcome, RefutationMethod, Verdict, combine_verdicts

__all__ = [
    "Budget",
    "Outcome",
    "RefutationMethod",
    "SolveMethod",
    "SolverSettings",
    "Verdict",
    "combine_verdicts",
    "get_solver_settings",
    "reset_solver_settings",
    "solve",
    "verify_certificate",
]

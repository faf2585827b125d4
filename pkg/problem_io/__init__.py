"""
问题文件：解析、构造、求解与序列化
"""

from problem_io.builder import BuiltFile, BuiltProblem, DefinitionError, build
from problem_io.models import (
    BudgetOverrides,
    GroupSpec,
    MorphismSpec,
    ProblemFile,
    ProblemSpec,
    TargetSpec,
)
from problem_io.parser import ParseIssue, ProblemFileError, parse, parse_text
from problem_io.runner import RunOptions, RunReport, VerdictRecord, run, solve_problem
from problem_io.serializer import serialize

__all__ = [
    "BudgetOverrides",
    "BuiltFile",
    "BuiltProblem",
    "DefinitionError",
    "GroupSpec",
    "MorphismSpec",
    "ParseIssue",
    "ProblemFile",
    "ProblemFileError",
    "ProblemSpec",
    "RunOptions",
    "RunReport",
    "TargetSpec",
    "VerdictRecord",
    "build",
    "parse",
    "parse_text",
    "run",
    "serialize",
    "solve_problem",
]

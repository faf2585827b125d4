"""
可分性引擎：有限商流 + Yes/No 双半算法
"""

from separability.engine import CandidateState, decide_gcp_coset, no_side_refine, yes_side_step
from separability.quotients import FiniteQuotientSpec, enumerate_quotients

__all__ = [
    "CandidateState",
    "FiniteQuotientSpec",
    "decide_gcp_coset",
    "enumerate_quotients",
    "no_side_refine",
    "yes_side_step",
]

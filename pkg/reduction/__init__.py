"""
归约引擎：GCP / GTCP / GBrCP 之间的降阶与提升
"""

from reduction.engine import (
    canonical_target,
    generalize,
    inner_tcp_to_gcp,
    lift_brcp,
    lift_tcp,
    lower_gcp,
    translate_plan_witness,
    virtually_inner_tcp,
)
from reduction.instances import PlanLink, ProblemInstance, ProblemKind, ReductionPlan

__all__ = [
    "PlanLink",
    "ProblemInstance",
    "ProblemKind",
    "ReductionPlan",
    "canonical_target",
    "generalize",
    "inner_tcp_to_gcp",
    "lift_brcp",
    "lift_tcp",
    "lower_gcp",
    "translate_plan_witness",
    "virtually_inner_tcp",
]

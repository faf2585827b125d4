"""
目标集合：有限集、有限生成子群、陪集，以及 K_r 切片
"""

from subset_targets.lattice import LatticeSubgroup
from subset_targets.slicing import base_intersection, coset_intersect, slice_coset, slice_target
from subset_targets.stallings import StallingsAutomaton, stallings_core
from subset_targets.targets import (
    Coset,
    FiniteSet,
    SlicedTarget,
    SliceKind,
    Subgroup,
    Target,
    image_target,
    left_translate,
    member,
)

__all__ = [
    "Coset",
    "FiniteSet",
    "LatticeSubgroup",
    "SlicedTarget",
    "SliceKind",
    "StallingsAutomaton",
    "Subgroup",
    "Target",
    "base_intersection",
    "coset_intersect",
    "image_target",
    "left_translate",
    "member",
    "slice_coset",
    "slice_target",
    "stallings_core",
]

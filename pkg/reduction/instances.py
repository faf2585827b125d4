"""
问题实例与归约计划
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

from group_kernel.errors import ErrorMessages, GroupInputError
from group_kernel.structures import Element, GroupHandle, Morphism
from subset_targets.targets import FiniteSet, Target


class ProblemKind(str, Enum):
    """问题种类"""

    CP = "CP"
    TCP = "TCP"
    BRP = "BrP"
    BRCP = "BrCP"
    GCP = "GCP"
    GTCP = "GTCP"
    GBRP = "GBrP"
    GBRCP = "GBrCP"

    @property
    def generalized(self) -> bool:
        return self in GENERALIZED_KINDS

    @property
    def needs_morphism(self) -> bool:
        return self not in (ProblemKind.CP, ProblemKind.GCP)

    @property
    def base_kind(self) -> "ProblemKind":
        """广义问题对应的目标种类（GCP → GCP；CP → GCP）"""
        return GENERALIZE.get(self, self)


GENERALIZED_KINDS = frozenset({ProblemKind.GCP, ProblemKind.GTCP, ProblemKind.GBRP, ProblemKind.GBRCP})

GENERALIZE = {
    ProblemKind.CP: ProblemKind.GCP,
    ProblemKind.TCP: ProblemKind.GTCP,
    ProblemKind.BRP: ProblemKind.GBRP,
    ProblemKind.BRCP: ProblemKind.GBRCP,
}


@dataclass(frozen=True)
class ProblemInstance:
    """
    问题实例

    - CP/TCP/BrP/BrCP: subject = g, other = h
    - GCP/GTCP/GBrP/GBrCP: subject = g, target = K
    - morphism 仅 TCP/BrP/BrCP 及其广义形式携带
    """

    kind: ProblemKind
    group: GroupHandle
    subject: Element
    other: Optional[Element] = None
    morphism: Optional[Morphism] = None
    target: Optional[Target] = None
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if self.subject.group is not self.group:
            raise GroupInputError(ErrorMessages.GROUP_MISMATCH.format(group=self.group))
        if self.kind.needs_morphism:
            if self.morphism is None:
                raise GroupInputError(f"{self.kind.value} 需要态射")
            if self.morphism.domain is not self.group or self.morphism.codomain is not self.group:
                raise GroupInputError(ErrorMessages.GROUP_MISMATCH.format(group=self.group))
        elif self.morphism is not None:
            raise GroupInputError(f"{self.kind.value} 不携带态射")
        if self.kind.generalized:
            if self.target is None or self.other is not None:
                raise GroupInputError(f"{self.kind.value} 需要目标集合 K")
            if self.target.group is not self.group:
                raise GroupInputError(ErrorMessages.GROUP_MISMATCH.format(group=self.group))
        else:
            if self.other is None or self.target is not None:
                raise GroupInputError(f"{self.kind.value} 需要第二个元素 h")
            if self.other.group is not self.group:
                raise GroupInputError(ErrorMessages.GROUP_MISMATCH.format(group=self.group))

    def target_set(self) -> Target:
        """广义形式下的目标（非广义问题为单点集 {h}）"""
        if self.kind.generalized:
            return self.target
        return FiniteSet.of(self.group, [self.other])


@dataclass(frozen=True)
class PlanLink:
    """
    计划成员的证书回译数据

    成员见证（共轭元 z 或 (k, v)）映射为原 GCP 的共轭元 t^{shift} z。
    """

    shift: int
    uses_exponent: bool = False


@dataclass(frozen=True)
class ReductionPlan:
    """
    归约计划：成员答案的 OR

    provenance 记录所用的定理分支（如 "lower-gcp:r=0"）。
    """

    instances: Tuple[ProblemInstance, ...]
    provenance: str
    links: Tuple[PlanLink, ...] = field(default=(), compare=False)
    source: Optional[ProblemInstance] = field(default=None, compare=False)

    def __post_init__(self):
        if not self.instances:
            raise GroupInputError("归约计划不能为空")

    def __len__(self) -> int:
        return len(self.instances)

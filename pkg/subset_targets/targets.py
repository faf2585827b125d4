"""
目标集合 K 的表示与成员判定

三种目标：
- FiniteSet：规范排序、去重的有限集合
- Subgroup：有限生成子群（按群族使用 Stallings 自动机 / 整数格 / 有限闭包 / 生成元列表）
- Coset：左陪集 rep·H
"""

import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import FrozenSet, Iterable, Optional, Tuple, Union

from group_kernel.errors import CapabilityError, ErrorMessages, GroupInputError
from group_kernel.kernel import apply, identity, inv, mul, sort_elements
from group_kernel.structures import Element, GroupFamily, GroupHandle, Morphism
from subset_targets.lattice import LatticeSubgroup
from subset_targets.stallings import StallingsAutomaton, stallings_core

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FiniteSet:
    """有限目标集合（元素已规范排序去重）"""

    group: GroupHandle
    elements: Tuple[Element, ...] = ()

    @classmethod
    def of(cls, group: GroupHandle, elements: Iterable[Element]) -> "FiniteSet":
        elements = list(elements)
        for x in elements:
            if x.group is not group:
                raise GroupInputError(ErrorMessages.GROUP_MISMATCH.format(group=group))
        return cls(group=group, elements=sort_elements(elements))

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def is_empty(self) -> bool:
        return not self.elements


@dataclass(frozen=True)
class Subgroup:
    """
    有限生成子群 ⟨generators⟩ ≤ group

    按需计算的表示（cached_property）：
    - automaton: 自由群
    - lattice: 自由交换群
    - members: 有限群
    半直积子群只保存生成元，成员判定走切片机制。
    """

    group: GroupHandle
    generators: Tuple[Element, ...] = ()

    def __post_init__(self):
        for g in self.generators:
            if g.group is not self.group:
                raise GroupInputError(ErrorMessages.GROUP_MISMATCH.format(group=self.group))

    @classmethod
    def from_lattice(cls, group: GroupHandle, lattice: LatticeSubgroup) -> "Subgroup":
        return cls(group=group, generators=tuple(Element(group, row) for row in lattice.basis))

    @classmethod
    def from_automaton(cls, automaton: StallingsAutomaton) -> "Subgroup":
        return cls(group=automaton.group, generators=tuple(automaton.generators()))

    @classmethod
    def from_members(cls, group: GroupHandle, members: Iterable[int]) -> "Subgroup":
        """有限群中由元素集合给出的子群（贪心选生成元）"""
        members = sorted(set(members))
        chosen = []
        reached = {group.identity_index}
        for x in members:
            if x not in reached:
                chosen.append(x)
                reached = _finite_closure(group, chosen)
        return cls(group=group, generators=tuple(Element(group, x) for x in chosen))

    @cached_property
    def automaton(self) -> StallingsAutomaton:
        if self.group.family != GroupFamily.FREE:
            raise CapabilityError(ErrorMessages.FAMILY_UNSUPPORTED.format(family=self.group.family, operation="automaton"))
        return stallings_core(list(self.generators), self.group)

    @cached_property
    def lattice(self) -> LatticeSubgroup:
        if self.group.family != GroupFamily.ABELIAN:
            raise CapabilityError(ErrorMessages.FAMILY_UNSUPPORTED.format(family=self.group.family, operation="lattice"))
        return LatticeSubgroup.from_generators([g.payload for g in self.generators], self.group.rank)

    @cached_property
    def members(self) -> FrozenSet[int]:
        if self.group.family != GroupFamily.FINITE:
            raise CapabilityError(ErrorMessages.FAMILY_UNSUPPORTED.format(family=self.group.family, operation="members"))
        return frozenset(_finite_closure(self.group, [g.payload for g in self.generators]))

    @property
    def t_exponents(self) -> Tuple[int, ...]:
        """半直积子群生成元的 t 指数"""
        return tuple(g.payload[0] for g in self.generators)

    @property
    def lies_in_base(self) -> bool:
        return self.group.family == GroupFamily.SEMIDIRECT and not any(self.t_exponents)


def _finite_closure(group: GroupHandle, gens) -> set:
    reached = {group.identity_index}
    queue = deque([group.identity_index])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = group.table[x][g]
            if y not in reached:
                reached.add(y)
                queue.append(y)
    return reached


@dataclass(frozen=True)
class Coset:
    """左陪集 representative·subgroup"""

    representative: Element
    subgroup: Subgroup

    def __post_init__(self):
        if self.representative.group is not self.subgroup.group:
            raise GroupInputError(ErrorMessages.GROUP_MISMATCH.format(group=self.subgroup.group))

    @property
    def group(self) -> GroupHandle:
        return self.subgroup.group


Target = Union[FiniteSet, Subgroup, Coset]


class SliceKind(str, Enum):
    EMPTY = "empty"
    COSET = "coset"
    FINITE = "finite"


@dataclass(frozen=True)
class SlicedTarget:
    """
    K_r = {x ∈ G | t^r x ∈ K} 或陪集交的结果

    kind=COSET 且 subgroup 为 None 表示 H∩G 不可计算，只有代表元可用。
    """

    kind: SliceKind
    group: GroupHandle
    representative: Optional[Element] = None
    subgroup: Optional[Subgroup] = None
    elements: Tuple[Element, ...] = ()

    @property
    def is_empty(self) -> bool:
        return self.kind == SliceKind.EMPTY or (self.kind == SliceKind.FINITE and not self.elements)

    @property
    def subgroup_available(self) -> bool:
        return self.kind != SliceKind.COSET or self.subgroup is not None

    def as_target(self) -> Target:
        """
        转为普通目标（空切片 → 空有限集）

        Raises:
            CapabilityError: 子群部分不可用
        """
        if self.kind == SliceKind.EMPTY:
            return FiniteSet(group=self.group)
        if self.kind == SliceKind.FINITE:
            return FiniteSet.of(self.group, self.elements)
        if self.subgroup is None:
            raise CapabilityError(ErrorMessages.SUBGROUP_PART_UNAVAILABLE, missing="base_intersection")
        return Coset(self.representative, self.subgroup)


# ==================== 成员判定 ====================


def member(T: Target, g: Element) -> bool:
    """
    精确成员判定

    Raises:
        CapabilityError: 群族与表示不支持成员判定
    """
    if g.group is not target_group(T):
        raise GroupInputError(ErrorMessages.GROUP_MISMATCH.format(group=target_group(T)))
    if isinstance(T, FiniteSet):
        return g in T.elements
    if isinstance(T, Coset):
        G = T.group
        return member(T.subgroup, mul(G, inv(G, T.representative), g))
    family = T.group.family
    if family == GroupFamily.FREE:
        return T.automaton.accepts(g.payload)
    if family == GroupFamily.ABELIAN:
        return T.lattice.contains(g.payload)
    if family == GroupFamily.FINITE:
        return g.payload in T.members
    if family == GroupFamily.SEMIDIRECT:
        from subset_targets.slicing import slice_coset

        r, x = g.payload
        sliced = slice_coset(Coset(identity(T.group), T), r)
        return sliced_member(sliced, x)
    raise CapabilityError(ErrorMessages.FAMILY_UNSUPPORTED.format(family=family, operation="member"), missing="member")


def sliced_member(sliced: SlicedTarget, x: Element) -> bool:
    if sliced.kind == SliceKind.EMPTY:
        return False
    if sliced.kind == SliceKind.FINITE:
        return x in sliced.elements
    if sliced.subgroup is None:
        raise CapabilityError(ErrorMessages.SUBGROUP_PART_UNAVAILABLE, missing="base_intersection")
    return member(Coset(sliced.representative, sliced.subgroup), x)


def target_group(T: Target) -> GroupHandle:
    return T.group


def left_translate(T: Target, w: Element) -> Target:
    """w·K"""
    G = target_group(T)
    if isinstance(T, FiniteSet):
        return FiniteSet.of(G, (mul(G, w, k) for k in T.elements))
    if isinstance(T, Coset):
        return Coset(mul(G, w, T.representative), T.subgroup)
    return Coset(w, T)


def image_target(T: Target, phi: Morphism) -> Target:
    """Kφ（同态把陪集映到陪集）"""
    H = phi.codomain
    if isinstance(T, FiniteSet):
        return FiniteSet.of(H, (apply(phi, k) for k in T.elements))
    if isinstance(T, Coset):
        return Coset(apply(phi, T.representative), image_target(T.subgroup, phi))
    return Subgroup(H, tuple(apply(phi, g) for g in T.generators))


def embed_at_zero(T: Target, G: GroupHandle) -> Target:
    """把基群上的目标嵌入半直积 G = base ⋊ Z 的 t 指数 0 层"""
    if isinstance(T, FiniteSet):
        return FiniteSet.of(G, (Element(G, (0, k)) for k in T.elements))
    if isinstance(T, Coset):
        return Coset(Element(G, (0, T.representative)), embed_at_zero(T.subgroup, G))
    return Subgroup(G, tuple(Element(G, (0, g)) for g in T.generators))


def shift_by_t(T: Target, G: GroupHandle, r: int) -> Target:
    """t^r·K（K 为基群上的目标）"""
    t_r = Element(G, (r, identity(G.base)))
    return left_translate(embed_at_zero(T, G), t_r)


def enumerate_finite(T: Target) -> Tuple[Element, ...]:
    """有限群中目标的全部元素"""
    G = target_group(T)
    if isinstance(T, FiniteSet):
        return T.elements
    if G.family != GroupFamily.FINITE:
        raise CapabilityError(ErrorMessages.FAMILY_UNSUPPORTED.format(family=G.family, operation="enumerate"))
    if isinstance(T, Coset):
        rep = T.representative.payload
        return sort_elements(Element(G, G.table[rep][h]) for h in T.subgroup.members)
    return sort_elements(Element(G, h) for h in T.members)

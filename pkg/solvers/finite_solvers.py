"""
有限群穷举判定

有限群上八种问题都可以完全枚举：共轭元遍历整张乘法表，
指数沿 g, gφ, gφ², ... 走到出现重复为止（可逆时轨道是纯周期的，负指数已被覆盖）。
"""

import logging
from typing import List, Set

from group_kernel.errors import ErrorMessages, GroupInputError
from group_kernel.kernel import apply, conjugate
from group_kernel.structures import Element, GroupFamily, GroupHandle, Morphism
from reduction.instances import ProblemInstance, ProblemKind
from solvers.evaluate import twisted_conjugate
from solvers.verdicts import RefutationMethod, Verdict
from subset_targets.targets import enumerate_finite

logger = logging.getLogger(__name__)


def all_elements(G: GroupHandle) -> List[Element]:
    return [Element(G, i) for i in range(G.order)]


def finite_orbit(phi: Morphism, g: Element) -> List[Element]:
    """g, gφ, gφ², ... 直到第一次重复（不含重复项）"""
    orbit = [g]
    seen = {g}
    current = apply(phi, g)
    while current not in seen:
        orbit.append(current)
        seen.add(current)
        current = apply(phi, current)
    return orbit


def _first_conjugate_in(g: Element, elements: List[Element], targets: Set[Element]):
    for x in elements:
        candidate = conjugate(g, x)
        if candidate in targets:
            return x, candidate
    return None


def solve_finite(inst: ProblemInstance) -> Verdict:
    """
    有限群上的穷举判定

    Returns:
        Yes（最小下标的共轭元 / 最小的非负指数）或 No(exhausted-finite)

    Raises:
        GroupInputError: 群不是有限群
    """
    G = inst.group
    if G.family != GroupFamily.FINITE:
        raise GroupInputError(ErrorMessages.FAMILY_UNSUPPORTED.format(family=G.family, operation="solve_finite"))
    targets = set(enumerate_finite(inst.target_set()))
    elements = all_elements(G)
    g = inst.subject
    kind = inst.kind.base_kind

    if kind == ProblemKind.GCP:
        hit = _first_conjugate_in(g, elements, targets)
        if hit:
            return Verdict.found(conjugator=hit[0], member=hit[1], stats={"steps": hit[0].payload + 1})
        return Verdict.refuted(RefutationMethod.EXHAUSTED_FINITE, stats={"steps": len(elements)}, searched=len(elements))

    phi = inst.morphism
    if kind == ProblemKind.GTCP:
        for z in elements:
            candidate = twisted_conjugate(phi, g, z)
            if candidate in targets:
                return Verdict.found(conjugator=z, member=candidate, stats={"steps": z.payload + 1})
        return Verdict.refuted(RefutationMethod.EXHAUSTED_FINITE, stats={"steps": len(elements)}, searched=len(elements))

    orbit = finite_orbit(phi, g)
    steps = 0
    for k, y in enumerate(orbit):
        if kind == ProblemKind.GBRP:
            steps += 1
            if y in targets:
                return Verdict.found(exponent=k, member=y, stats={"steps": steps})
            continue
        hit = _first_conjugate_in(y, elements, targets)
        steps += len(elements)
        if hit:
            return Verdict.found(conjugator=hit[0], exponent=k, member=hit[1], stats={"steps": steps})
    logger.debug("有限轨道长度 %d 内无命中", len(orbit))
    return Verdict.refuted(
        RefutationMethod.EXHAUSTED_FINITE,
        stats={"steps": steps},
        searched=len(elements) if kind == ProblemKind.GBRCP else 1,
        orbit_length=len(orbit),
    )

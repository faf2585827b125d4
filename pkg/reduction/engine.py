"""
归约演算

对 G ⋊_φ Z 中的 t^r g 与 X = t^s v：
    X^{-1}(t^r g)X = t^r · (v^{-1}φ^r)(gφ^s)v
因此：
- r = 0：GCP(K, g) ⇔ GBrCP(K_0, φ, g)，见证 (k, v) 对应 X = t^k v
- r ≠ 0：GCP(K, t^r g) ⇔ OR_{j=0..|r|-1} GTCP(K_r, φ^r, gφ^j)，成员 j 的见证 z 对应 X = t^j z
  （取 x = g^{-1} 得 (x^{-1}φ^r) g x = gφ^r，gφ^r 与 g 是 φ^r-扭共轭的，所以 s 只需取模 |r| 的代表）
"""

import logging
from typing import Optional

from group_kernel.builders import semidirect_product
from group_kernel.errors import CapabilityError, ErrorMessages, GroupInputError
from group_kernel.kernel import apply_power, identity, morphism_power, mul
from group_kernel.structures import Element, GroupFamily, GroupHandle, Morphism
from reduction.instances import GENERALIZE, PlanLink, ProblemInstance, ProblemKind, ReductionPlan
from subset_targets.slicing import slice_target
from subset_targets.targets import (
    Coset,
    FiniteSet,
    Subgroup,
    Target,
    embed_at_zero,
    left_translate,
    member,
    shift_by_t,
)

logger = logging.getLogger(__name__)


def canonical_target(T: Target) -> Target:
    """代表元为单位元的陪集写成子群本身"""
    if isinstance(T, Coset) and T.representative == identity(T.group):
        return T.subgroup
    return T


def generalize(inst: ProblemInstance) -> ProblemInstance:
    """CP/TCP/BrP/BrCP → 目标为单点集的广义形式"""
    if inst.kind.generalized:
        return inst
    return ProblemInstance(
        kind=GENERALIZE[inst.kind],
        group=inst.group,
        subject=inst.subject,
        morphism=inst.morphism,
        target=FiniteSet.of(inst.group, [inst.other]),
        name=inst.name,
    )


def lower_gcp(inst: ProblemInstance) -> ReductionPlan:
    """
    把 G ⋊_φ Z 上的 GCP 降为基群上的问题

    Args:
        inst: GCP（或 CP）实例，群为半直积

    Returns:
        r = 0 时为单个 GBrCP(K_0, φ, g)；否则为 |r| 个 GTCP(K_r, φ^r, gφ^j)

    Raises:
        CapabilityError: K_r 的子群部分不可计算
    """
    inst = generalize(inst)
    if inst.kind != ProblemKind.GCP:
        raise GroupInputError(f"lower_gcp 只接受 GCP，实际 {inst.kind.value}")
    G = inst.group
    if G.family != GroupFamily.SEMIDIRECT:
        raise GroupInputError(ErrorMessages.FAMILY_UNSUPPORTED.format(family=G.family, operation="lower_gcp"))
    phi = G.phi
    r, g = inst.subject.payload
    sliced = slice_target(inst.target, r)
    if not sliced.subgroup_available:
        raise CapabilityError(ErrorMessages.SUBGROUP_PART_UNAVAILABLE, missing="base_intersection")
    sliced_target = canonical_target(sliced.as_target())

    if r == 0:
        member_instance = ProblemInstance(
            kind=ProblemKind.GBRCP, group=G.base, subject=g, morphism=phi, target=sliced_target
        )
        logger.debug("降阶 r=0 → GBrCP(K_0)")
        return ReductionPlan(
            instances=(member_instance,),
            provenance="lower-gcp:r=0",
            links=(PlanLink(shift=0, uses_exponent=True),),
            source=inst,
        )

    psi = morphism_power(phi, r)
    instances = []
    links = []
    for j in range(abs(r)):
        instances.append(
            ProblemInstance(
                kind=ProblemKind.GTCP,
                group=G.base,
                subject=apply_power(phi, g, j),
                morphism=psi,
                target=sliced_target,
            )
        )
        links.append(PlanLink(shift=j))
    logger.debug("降阶 r=%d → %d 个 GTCP", r, len(instances))
    return ReductionPlan(
        instances=tuple(instances),
        provenance=f"lower-gcp:r={r}",
        links=tuple(links),
        source=inst,
    )


def translate_plan_witness(
    plan: ReductionPlan,
    index: int,
    conjugator: Optional[Element],
    exponent: Optional[int] = None,
) -> Element:
    """
    把计划成员的 Yes 见证译回原 GCP 的共轭元

    - GBrCP 成员：(k, v) → t^k v
    - GTCP 成员 j：z → t^j z
    """
    G = plan.source.group
    link = plan.links[index]
    base = plan.instances[index].group
    v = conjugator if conjugator is not None else identity(base)
    shift = exponent if link.uses_exponent else link.shift
    return Element(G, (shift or 0, v))


def ambient_for(phi: Morphism, ambient: Optional[GroupHandle] = None) -> GroupHandle:
    if ambient is not None:
        if ambient.family != GroupFamily.SEMIDIRECT or ambient.base is not phi.domain:
            raise GroupInputError(ErrorMessages.GROUP_MISMATCH.format(group=ambient))
        return ambient
    return semidirect_product(phi.domain, phi)


def lift_brcp(K: Target, phi: Morphism, g: Element, ambient: Optional[GroupHandle] = None) -> ProblemInstance:
    """GBrCP(K, φ, g) ≡ GCP(K, t^0 g) 于 G ⋊_φ Z"""
    G = ambient_for(phi, ambient)
    return ProblemInstance(
        kind=ProblemKind.GCP,
        group=G,
        subject=Element(G, (0, g)),
        target=embed_at_zero(K, G),
    )


def lift_tcp(K: Target, phi: Morphism, g: Element, ambient: Optional[GroupHandle] = None) -> ProblemInstance:
    """GTCP(K, φ, g) ≡ GCP(t·K, t·g) 于 G ⋊_φ Z"""
    G = ambient_for(phi, ambient)
    return ProblemInstance(
        kind=ProblemKind.GCP,
        group=G,
        subject=Element(G, (1, g)),
        target=shift_by_t(K, G, 1),
    )


def inner_tcp_to_gcp(K: Target, w: Element, g: Element) -> ProblemInstance:
    """
    φ = λ_w 时：(x^{-1}λ_w) g x ∈ K ⇔ x^{-1}(wg)x ∈ wK

    Raises:
        CapabilityError: 自由群子群目标且 w ∉ K（自由群不支持陪集目标）
    """
    G = g.group
    if isinstance(K, Subgroup) and G.family == GroupFamily.FREE:
        if not member(K, w):
            raise CapabilityError(
                ErrorMessages.FAMILY_UNSUPPORTED.format(family=G.family, operation="GCP 陪集目标"),
                missing="free-group coset targets",
            )
        translated: Target = K
    else:
        translated = canonical_target(left_translate(K, w))
    return ProblemInstance(kind=ProblemKind.GCP, group=G, subject=mul(G, w, g), target=translated)


def virtually_inner_tcp(inst: ProblemInstance) -> ProblemInstance:
    """
    带见证 φ = λ_x（r = 1）的 GTCP 改写为 GCP

    Raises:
        CapabilityError: 没有 r = 1 的见证
    """
    inst = generalize(inst)
    phi = inst.morphism
    if inst.kind != ProblemKind.GTCP or phi is None or phi.witness is None or phi.witness[0] != 1:
        raise CapabilityError("GTCP 需要内自同构见证 (1, x)", missing="inner witness")
    return inner_tcp_to_gcp(inst.target, phi.witness[1], inst.subject)

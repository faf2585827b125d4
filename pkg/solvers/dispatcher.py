"""
求解分发

按群族与问题种类选择最具体的判定器：
- 有限群：穷举
- 自由交换群：格与模 m 轨道
- 自由群：循环置换 / Stallings 自动机 / 虚内见证
- Z^n ⋊_A Z 等半直积：lower_gcp 降阶，或可分性引擎
- 虚自由群：BrP 悬挂归约

任何 Yes/No 都带证书；无可用判定器时抛出 CapabilityError。
"""

import logging
from enum import Enum
from typing import Callable, Optional, Tuple

from group_kernel.errors import CapabilityError, ErrorMessages
from group_kernel.kernel import apply_power, fixes_generators, identity
from group_kernel.structures import Element, GroupFamily
from reduction.engine import generalize, lower_gcp, translate_plan_witness, virtually_inner_tcp
from reduction.instances import ProblemInstance, ProblemKind, ReductionPlan
from solvers.abelian_solvers import gbrp_coset_abelian, gtcp_coset_abelian
from solvers.config import Budget
from solvers.evaluate import evaluate
from solvers.finite_solvers import solve_finite
from solvers.free_solvers import conj_into_subgroup_free, cp_free, gbrcp_via_free
from solvers.orbit import brp_orbit, orbit_search
from solvers.verdicts import RefutationMethod, Verdict, combine_verdicts
from solvers.virtually_free import brp_virtually_free
from subset_targets.targets import Coset, FiniteSet, Subgroup, Target, member

logger = logging.getLogger(__name__)


class SolveMethod(str, Enum):
    """Z^n ⋊_A Z 上 GCP 的求解路线"""

    AUTO = "auto"
    LOWERING = "lowering"
    SEPARABILITY = "separability"


def solve(inst: ProblemInstance, budget: Optional[Budget] = None, method: SolveMethod = SolveMethod.AUTO) -> Verdict:
    """
    求解一个问题实例

    Args:
        inst: 问题实例（非广义种类先转为单点目标）
        budget: 预算，缺省取配置
        method: 半直积 GCP 的路线

    Returns:
        Verdict

    Raises:
        CapabilityError: 没有适用的判定器
    """
    budget = budget or Budget.from_settings()
    inst = generalize(inst)
    family = inst.group.family
    logger.debug("求解 %s（%s 群族）", inst.kind.value, family.value)

    if isinstance(inst.target, FiniteSet) and inst.target.is_empty:
        verdict = Verdict.refuted(RefutationMethod.EXHAUSTED_FINITE, stats={"steps": 0}, searched=0)
    elif family == GroupFamily.FINITE:
        verdict = solve_finite(inst)
    elif family == GroupFamily.ABELIAN:
        verdict = _solve_abelian(inst, budget)
    elif family == GroupFamily.FREE:
        verdict = _solve_free(inst, budget)
    elif family == GroupFamily.SEMIDIRECT:
        verdict = _solve_semidirect(inst, budget, method)
    elif family == GroupFamily.VIRTUALLY_FREE:
        verdict = _solve_virtually_free(inst, budget)
    else:
        raise CapabilityError(ErrorMessages.FAMILY_UNSUPPORTED.format(family=family, operation="solve"))
    logger.info("%s %s%s: %s", _mark(verdict), inst.kind.value, f" [{inst.name}]" if inst.name else "", verdict.outcome.value)
    return verdict


def _mark(verdict: Verdict) -> str:
    return "?" if verdict.is_unknown else ("✓" if verdict.is_yes else "✗")


def _unsupported(inst: ProblemInstance, missing: str) -> CapabilityError:
    logger.warning("无适用判定器: %s 于 %s（缺少 %s）", inst.kind.value, inst.group.family.value, missing)
    return CapabilityError(
        ErrorMessages.FAMILY_UNSUPPORTED.format(family=inst.group.family, operation=inst.kind.value),
        missing=missing,
    )


def _or_over(elements, decide: Callable[[Element], Verdict]) -> Verdict:
    """对有限目标逐个判定并 OR 组合，胜出的证书保持原样"""
    verdict, _ = combine_verdicts(decide(h) for h in elements)
    return verdict


# ==================== 自由交换群 ====================


def _solve_abelian(inst: ProblemInstance, budget: Budget) -> Verdict:
    G = inst.group
    kind = inst.kind
    g = inst.subject
    K = inst.target
    if kind == ProblemKind.GCP:
        # 交换群中共轭即自身
        if member(K, g):
            return Verdict.found(conjugator=identity(G), member=g, stats={"steps": 1})
        if isinstance(K, FiniteSet):
            return Verdict.refuted(RefutationMethod.EXHAUSTED_FINITE, stats={"steps": 1}, searched=len(K))
        lattice = K.subgroup.lattice if isinstance(K, Coset) else K.lattice
        offset = K.representative.payload if isinstance(K, Coset) else identity(G).payload
        diff = tuple(a - b for a, b in zip(g.payload, offset))
        return Verdict.refuted(
            RefutationMethod.LATTICE_OBSTRUCTION, stats={"steps": 1}, basis=lattice.basis, residue=lattice.residue(diff)
        )
    phi = inst.morphism
    if kind == ProblemKind.GTCP:
        return gtcp_coset_abelian(phi, g, K)
    # 交换群中 GBrCP 与 GBrP 一致，共轭元取单位元
    verdict = _abelian_orbit(phi, g, K, budget)
    if kind == ProblemKind.GBRCP and verdict.is_yes:
        yes = verdict.yes
        return Verdict.found(
            conjugator=identity(G), exponent=yes.exponent, member=yes.member, stats=verdict.stats, **yes.extra
        )
    return verdict


def _abelian_orbit(phi, g: Element, K: Target, budget: Budget) -> Verdict:
    if isinstance(K, FiniteSet):
        if len(K) == 1:
            return brp_orbit(phi, g, K.elements[0], budget)
        return orbit_search(phi, g, lambda w: w in K.elements, budget)
    if isinstance(K, Coset):
        return gbrp_coset_abelian(phi, g, K.representative, K.subgroup.lattice, budget)
    return gbrp_coset_abelian(phi, g, identity(K.group), K.lattice, budget)


# ==================== 自由群 ====================


def _subgroup_of(inst: ProblemInstance, K: Target) -> Subgroup:
    """自由群的陪集目标仅在代表元属于子群时可用（化为子群本身）"""
    if isinstance(K, Subgroup):
        return K
    if member(K.subgroup, K.representative):
        return K.subgroup
    raise _unsupported(inst, "free-group coset targets")


def _solve_free(inst: ProblemInstance, budget: Budget) -> Verdict:
    kind = inst.kind
    g = inst.subject
    K = inst.target
    if kind == ProblemKind.GCP:
        if isinstance(K, FiniteSet):
            return _or_over(K.elements, lambda h: cp_free(g, h))
        return conj_into_subgroup_free(g, _subgroup_of(inst, K).automaton)

    phi = inst.morphism
    if kind == ProblemKind.GTCP:
        if fixes_generators(phi):
            return solve(ProblemInstance(kind=ProblemKind.GCP, group=inst.group, subject=g, target=K), budget)
        if phi.witness is not None and phi.witness[0] == 1:
            verdict = solve(virtually_inner_tcp(inst), budget)
            if not verdict.is_yes:
                return verdict
            # 同一个 x 也是原扭共轭问题的见证
            x = verdict.yes.conjugator
            return Verdict.found(conjugator=x, member=evaluate(inst, conjugator=x), stats=verdict.stats)
        raise _unsupported(inst, "inner witness")

    if kind == ProblemKind.GBRP:
        if isinstance(K, FiniteSet):
            return orbit_search(phi, g, lambda w: w in K.elements, budget)
        H = _subgroup_of(inst, K)
        if phi.witness is not None and phi.invertible:
            return gbrcp_via_free(g, phi, H.automaton, kind=ProblemKind.GBRP, allow_negative=True)
        return orbit_search(phi, g, lambda w: H.automaton.accepts(w.payload), budget)

    # GBrCP
    if isinstance(K, FiniteSet):
        if phi.witness is not None:
            r = phi.witness[0]
            return _or_over(
                [(q, h) for q in range(r) for h in K.elements],
                lambda pair: _shifted(cp_free(apply_power(phi, g, pair[0]), pair[1]), pair[0]),
            )
        return _orbit_with_conjugator(phi, g, lambda w: _or_over(K.elements, lambda h: cp_free(w, h)), budget)
    H = _subgroup_of(inst, K)
    if phi.witness is not None:
        return gbrcp_via_free(g, phi, H.automaton, kind=ProblemKind.GBRCP)
    return _orbit_with_conjugator(phi, g, lambda w: conj_into_subgroup_free(w, H.automaton), budget)


def _shifted(verdict: Verdict, exponent: int) -> Verdict:
    """给共轭判定的 Yes 证书补上指数"""
    if not verdict.is_yes:
        return verdict
    yes = verdict.yes
    return Verdict.found(conjugator=yes.conjugator, exponent=exponent, member=yes.member, stats=verdict.stats, **yes.extra)


def _orbit_with_conjugator(phi, g: Element, decide: Callable[[Element], Verdict], budget: Budget) -> Verdict:
    """无见证的 GBrCP：沿轨道搜索，命中后重算共轭元"""
    verdict = orbit_search(phi, g, lambda w: decide(w).is_yes, budget)
    if not verdict.is_yes:
        return verdict
    return _shifted(decide(verdict.yes.member), verdict.yes.exponent)


# ==================== 半直积 ====================


def _solve_semidirect(inst: ProblemInstance, budget: Budget, method: SolveMethod) -> Verdict:
    G = inst.group
    kind = inst.kind
    if kind == ProblemKind.GBRP:
        K = inst.target
        if isinstance(K, FiniteSet):
            return orbit_search(inst.morphism, inst.subject, lambda w: w in K.elements, budget)
        return orbit_search(inst.morphism, inst.subject, lambda w: member(K, w), budget)
    if kind != ProblemKind.GCP:
        raise _unsupported(inst, f"{kind.value} over semidirect products")

    abelian_base = G.base.family == GroupFamily.ABELIAN
    if method == SolveMethod.SEPARABILITY:
        return solve_by_separability(inst, budget)
    try:
        verdict = solve_by_lowering(inst, budget)
    except CapabilityError as e:
        if method == SolveMethod.AUTO and abelian_base:
            logger.warning("降阶不可用（%s），改用可分性引擎", e.missing)
            return solve_by_separability(inst, budget)
        raise
    if verdict.is_unknown and method == SolveMethod.AUTO and abelian_base:
        logger.info("降阶未判定，改用可分性引擎")
        return solve_by_separability(inst, budget)
    return verdict


def solve_plan(plan: ReductionPlan, budget: Budget) -> Tuple[Verdict, Optional[int]]:
    """逐个求解计划成员并 OR 组合"""
    verdicts = []
    for index, member_instance in enumerate(plan.instances):
        verdict = solve(member_instance, budget)
        verdicts.append(verdict)
        if verdict.is_yes:
            return verdict, index
    return combine_verdicts(verdicts)


def solve_by_lowering(inst: ProblemInstance, budget: Budget) -> Verdict:
    """GCP(K, t^r g) 经 lower_gcp 降到基群，Yes 见证译回 t^s v"""
    plan = lower_gcp(inst)
    verdict, index = solve_plan(plan, budget)
    if verdict.is_yes:
        yes = verdict.yes
        X = translate_plan_witness(plan, index, yes.conjugator, yes.exponent)
        source = generalize(inst)
        return Verdict.found(
            conjugator=X,
            member=evaluate(source, conjugator=X),
            stats=verdict.stats,
            provenance=plan.provenance,
            plan_member=index,
        )
    if verdict.is_no:
        return Verdict.refuted(
            RefutationMethod.PLAN_EXHAUSTED,
            stats=verdict.stats,
            provenance=plan.provenance,
            members=tuple(verdict.no.data.get("members", (verdict.no.method.value,))),
        )
    return verdict


def solve_by_separability(inst: ProblemInstance, budget: Budget) -> Verdict:
    """GCP 经可分性引擎；有限集目标拆成单点陪集后 OR 组合"""
    from separability.engine import decide_gcp_coset

    inst = generalize(inst)
    G = inst.group
    K = inst.target
    if isinstance(K, FiniteSet):
        trivial = Subgroup(G)
        return _or_over(K.elements, lambda h: decide_gcp_coset(inst.subject, Coset(h, trivial), budget))
    coset = K if isinstance(K, Coset) else Coset(identity(G), K)
    return decide_gcp_coset(inst.subject, coset, budget)


# ==================== 虚自由群 ====================


def _solve_virtually_free(inst: ProblemInstance, budget: Budget) -> Verdict:
    K = inst.target
    if inst.kind != ProblemKind.GBRP or not isinstance(K, FiniteSet):
        raise _unsupported(inst, f"{inst.kind.value} with {type(K).__name__} targets over virtually free groups")
    return _or_over(K.elements, lambda h: brp_virtually_free(inst.group, inst.morphism, inst.subject, h, budget))


# ==================== 证书校验 ====================


def verify_certificate(inst: ProblemInstance, verdict: Verdict) -> Optional[bool]:
    """
    把 Yes 证书代回定义式复核

    Returns:
        非 Yes 结果返回 None；否则返回求值结果是否落入目标（且与证书记录的成员一致）
    """
    if not verdict.is_yes:
        return None
    yes = verdict.yes
    value = evaluate(inst, conjugator=yes.conjugator, exponent=yes.exponent)
    if yes.member is not None and yes.member != value:
        logger.warning("✗ 证书成员与求值结果不一致: %s", inst.name or inst.kind.value)
        return False
    ok = member(inst.target_set(), value)
    if not ok:
        logger.warning("✗ 证书复核失败: %s", inst.name or inst.kind.value)
    return ok

"""
自由群判定

- cp_free：循环约化后比较循环置换
- conj_into_subgroup_free：循环核在核心自动机某状态上读成闭路
- conj_power_into_subgroup：∃p ≥ 0 使 x^{-p} u x^p ∈ H
- gbrcp_via_free：虚内自同构 φ^r = λ_x 下的 GBrP / GBrCP，
  利用 uφ^{pr+q} = (x^{-p} u x^p)φ^q
"""

import logging
from typing import List, Optional

from group_kernel import words as fw
from group_kernel.errors import CapabilityError, ErrorMessages, GroupInputError
from group_kernel.kernel import (
    apply_power,
    conjugate,
    cyclically_reduce,
    identity,
    inv,
    inverse_morphism,
    is_identity,
    power,
)
from group_kernel.structures import Element, GroupFamily, Morphism
from reduction.instances import ProblemKind
from solvers.verdicts import RefutationMethod, Verdict
from subset_targets.stallings import StallingsAutomaton, conjugate_by, stallings_core

logger = logging.getLogger(__name__)


def _check_free(*elements: Element) -> None:
    for g in elements:
        if g.group.family != GroupFamily.FREE:
            raise GroupInputError(ErrorMessages.FAMILY_UNSUPPORTED.format(family=g.group.family, operation="free solver"))
    groups = {id(g.group) for g in elements}
    if len(groups) > 1:
        raise GroupInputError(ErrorMessages.GROUP_MISMATCH.format(group=elements[0].group))


def cp_free(u: Element, v: Element) -> Verdict:
    """
    自由群共轭问题

    Returns:
        Yes(conjugator=x)，x^{-1} u x = v；No(exhausted-finite) 记录比较过的循环置换数
    """
    _check_free(u, v)
    F = u.group
    core_u, c_u = cyclically_reduce(u)
    core_v, c_v = cyclically_reduce(v)
    if len(core_u.payload) != len(core_v.payload):
        return Verdict.refuted(
            RefutationMethod.EXHAUSTED_FINITE,
            stats={"steps": 1},
            rotations=0,
            core_lengths=(len(core_u.payload), len(core_v.payload)),
        )
    checked = 0
    for offset, rotated in fw.rotations(core_u.payload):
        checked += 1
        if rotated == core_v.payload:
            # core_v = p^{-1} core_u p，p 为前 offset 个字母
            p = Element(F, core_u.payload[:offset])
            x = inv(F, c_u) * p * c_v
            return Verdict.found(conjugator=x, member=v, stats={"steps": checked}, offset=offset)
    return Verdict.refuted(RefutationMethod.EXHAUSTED_FINITE, stats={"steps": checked}, rotations=checked)


def conj_into_subgroup_free(g: Element, H: StallingsAutomaton) -> Verdict:
    """
    是否有 g 的共轭落入 H

    Args:
        g: 自由群元素（内部先做循环约化）
        H: 子群的核心自动机

    Returns:
        Yes(conjugator=x, member=x^{-1} g x)；No(automaton-sweep) 记录扫过的 状态 × 循环置换
    """
    _check_free(g)
    F = g.group
    if is_identity(g):
        return Verdict.found(conjugator=identity(F), member=g, stats={"steps": 1})
    core, y = cyclically_reduce(g)
    paths = H.tree_paths()
    steps = 0
    for state in range(H.num_states):
        for offset, rotated in fw.rotations(core.payload):
            steps += 1
            if H.read(state, rotated) != state:
                continue
            # g = y^{-1} p·rot·p^{-1} y，取 x = y^{-1} p π_s^{-1}
            p = Element(F, core.payload[:offset])
            pi = Element(F, paths[state])
            x = inv(F, y) * p * inv(F, pi)
            logger.debug("✓ 循环置换 offset=%d 在状态 %d 上成环", offset, state)
            return Verdict.found(
                conjugator=x, member=conjugate(g, x), stats={"steps": steps}, state=state, offset=offset
            )
    return Verdict.refuted(
        RefutationMethod.AUTOMATON_SWEEP,
        stats={"steps": steps},
        states=H.num_states,
        rotations=max(len(core.payload), 1),
    )


def conj_power_into_subgroup(u: Element, x: Element, H: StallingsAutomaton) -> Verdict:
    """
    判定 ∃p ≥ 0：x^{-p} u x^p ∈ H

    记 x = c^{-1} x0 c（x0 循环约化），条件等价于 x0^{-p} (c u c^{-1}) x0^p ∈ c H c^{-1}。
    状态序列 s_p = base·x0^{-p} 在 cHc^{-1} 的自动机上是部分确定轨道：
    要么在某个 p0 处无定义，要么进入周期。约化字 x0^{-p} u' x0^p 的两端
    至多被 u' 消去 |u'|+1 块，所以检查到 p0（或 前周期+周期）再多 |u'|+2 步即完全判定。

    Returns:
        Yes(exponent=p, conjugator=x^p, member)；No(automaton-sweep) 记录状态序列
    """
    _check_free(u, x)
    F = u.group

    def attempt(p: int) -> Optional[Verdict]:
        conj = power(x, p)
        w = conjugate(u, conj)
        if H.accepts(w.payload):
            return Verdict.found(conjugator=conj, exponent=p, member=w, stats={"steps": p + 1})
        return None

    found = attempt(0)
    if found:
        return found
    if is_identity(x):
        return Verdict.refuted(RefutationMethod.AUTOMATON_SWEEP, stats={"steps": 1}, reason="trivial", checked_up_to=0)

    x0, c = cyclically_reduce(x)
    shifted_u = c * u * inv(F, c)
    shifted_h = conjugate_by(H, inv(F, c))
    step_word = fw.invert(x0.payload)

    states: List[int] = [shifted_h.base]
    index = {shifted_h.base: 0}
    reason = "escaped"
    horizon = 0
    while True:
        nxt = shifted_h.read(states[-1], step_word)
        p = len(states)
        if nxt is None:
            horizon = p
            break
        if nxt in index:
            reason = "cycle"
            horizon = p
            break
        index[nxt] = p
        states.append(nxt)

    limit = horizon + len(shifted_u.payload) + 2
    for p in range(1, limit + 1):
        found = attempt(p)
        if found:
            return found
    logger.debug("✗ 状态序列 %s（%s），检查到 p=%d", states, reason, limit)
    return Verdict.refuted(
        RefutationMethod.AUTOMATON_SWEEP,
        stats={"steps": limit + 1},
        reason=reason,
        states=tuple(states),
        checked_up_to=limit,
    )


def _require_witness(phi: Morphism):
    if phi.witness is None:
        raise CapabilityError("需要虚内见证 φ^r = λ_x", missing="virtually-inner witness")
    return phi.witness


def gbrcp_via_free(
    u: Element,
    phi: Morphism,
    K: StallingsAutomaton,
    kind: ProblemKind = ProblemKind.GBRCP,
    allow_negative: bool = False,
) -> Verdict:
    """
    虚内自同构下的 GBrP / GBrCP（自由群、子群目标）

    Args:
        u: 自由群元素
        phi: 带见证 (r, x) 的自同构
        K: 目标子群的核心自动机
        kind: GBRCP 或 GBRP
        allow_negative: GBrP 是否同时搜索 p < 0（用 x^{-1} 代替 x）

    Returns:
        Yes 证书带 (p, q)，k = pr + q；No(automaton-sweep)

    Raises:
        CapabilityError: 缺少见证，或 GBrP 缺少逆像
    """
    _check_free(u)
    r, x = _require_witness(phi)
    F = u.group
    kind = kind.base_kind

    if kind == ProblemKind.GBRCP:
        steps = 0
        for q in range(r):
            moved = apply_power(phi, u, q)
            verdict = conj_into_subgroup_free(moved, K)
            steps += verdict.stats.get("steps", 0)
            if verdict.is_yes:
                return Verdict.found(
                    conjugator=verdict.yes.conjugator,
                    exponent=q,
                    member=verdict.yes.member,
                    stats={"steps": steps},
                    p=0,
                    q=q,
                )
        return Verdict.refuted(RefutationMethod.AUTOMATON_SWEEP, stats={"steps": steps}, q_range=r)

    if kind != ProblemKind.GBRP:
        raise GroupInputError(f"gbrcp_via_free 只处理 GBrP/GBrCP，实际 {kind.value}")
    if not phi.invertible:
        raise CapabilityError(ErrorMessages.INVERSE_REQUIRED.format(operation="GBrP 的 Kφ^{-q}"), missing="inverse_images")
    phi_inv = inverse_morphism(phi)
    generators = K.generators()
    directions = [(1, x)] + ([(-1, inv(F, x))] if allow_negative else [])
    steps = 0
    sweeps = []
    for q in range(r):
        # x^{-p} u x^p ∈ Kφ^{-q}
        pulled_back = stallings_core([apply_power(phi_inv, g, q) for g in generators], F)
        for sign, conj_base in directions:
            verdict = conj_power_into_subgroup(u, conj_base, pulled_back)
            steps += verdict.stats.get("steps", 0)
            if verdict.is_yes:
                p = sign * verdict.yes.exponent
                member = apply_power(phi, verdict.yes.member, q)
                return Verdict.found(exponent=p * r + q, member=member, stats={"steps": steps}, p=p, q=q)
            sweeps.append(verdict.no.data.get("checked_up_to"))
    return Verdict.refuted(RefutationMethod.AUTOMATON_SWEEP, stats={"steps": steps}, q_range=r, checked_up_to=tuple(sweeps))


def gbrcp_orbit_predicate(K: StallingsAutomaton):
    """无见证时 GBrCP 的谓词：轨道元素有共轭落入 K"""
    return lambda w: conj_into_subgroup_free(w, K).is_yes

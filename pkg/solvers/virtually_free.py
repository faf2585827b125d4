"""
虚自由群上的 Brinkmann 问题

G = F b_1 ∪ ... ∪ F b_m，F 在 φ 下全不变。φ 诱导有限商 G/F 上的映射 θ: [b_i] ↦ [b_i φ]，
候选指数只能是 s + pN（s 为 θ 轨道首次命中 [b_j] 的步数，p 为周期，可以为 0）。
对 p > 0，在 F* = F ∗ ⟨c⟩ 上构造 ψ: a ↦ aφ^p，c ↦ z c（b_j φ^p = z b_j），
于是 (y b_j)φ^{pd} = v b_j ⇔ (y c)ψ^d = v c，归结为自由群上的轨道问题。
"""

import logging
from typing import List, Tuple

from group_kernel.builders import free_group, make_morphism
from group_kernel.errors import ErrorMessages, GroupInputError
from group_kernel.kernel import apply, apply_power, generators, identity, morphism_power
from group_kernel.structures import Element, GroupFamily, GroupHandle, Morphism
from solvers.config import Budget
from solvers.orbit import brp_orbit
from solvers.verdicts import RefutationMethod, Verdict

logger = logging.getLogger(__name__)


def _restrict_to_free_part(G: GroupHandle, phi: Morphism) -> Morphism:
    """
    φ 在 F 上的限制

    Raises:
        GroupInputError: 某个 F 生成元的像不在 F 中
    """
    F = G.base
    images = []
    for a in generators(F):
        image = apply(phi, Element(G, (a, 0)))
        word, coset = image.payload
        if coset != 0:
            raise GroupInputError(ErrorMessages.NOT_FULLY_INVARIANT.format(generator=a))
        images.append(word)
    return make_morphism(F, F, images)


def coset_orbit(G: GroupHandle, phi: Morphism, start: int) -> Tuple[List[int], int]:
    """
    θ 在 G/F 上从 start 出发的轨道

    Returns:
        (轨道序列（不含重复项）, 周期起点下标)
    """
    e = identity(G.base)
    sequence = [start]
    position = {start: 0}
    while True:
        nxt = apply(phi, Element(G, (e, sequence[-1]))).payload[1]
        if nxt in position:
            return sequence, position[nxt]
        position[nxt] = len(sequence)
        sequence.append(nxt)


def _suspension_group(F: GroupHandle) -> GroupHandle:
    names = set(F.generator_names)
    letter = "c"
    while letter in names:
        letter += "'"
    return free_group(F.generator_names + (letter,), name=f"{F.name or 'F'}*<{letter}>")


def brp_virtually_free(G: GroupHandle, phi: Morphism, g: Element, h: Element, budget: Budget) -> Verdict:
    """
    虚自由群的 BrP：∃k ≥ 0，gφ^k = h

    Args:
        G: 虚自由群
        phi: G 的自同态（F 全不变）
        g: u b_i
        h: v b_j

    Returns:
        Yes(exponent=k)；No（θ 轨道不含 [b_j]、p = 0 且唯一候选失败、或悬挂轨道成环）；Unknown

    Raises:
        GroupInputError: 群不是虚自由群，或 F 不是全不变的
    """
    if G.family != GroupFamily.VIRTUALLY_FREE:
        raise GroupInputError(ErrorMessages.FAMILY_UNSUPPORTED.format(family=G.family, operation="brp_virtually_free"))
    F = G.base
    phi_free = _restrict_to_free_part(G, phi)
    _, i = g.payload
    v, j = h.payload

    orbit, cycle_start = coset_orbit(G, phi, i)
    if j not in orbit:
        logger.debug("✗ θ 轨道 %s 不含陪集 %d", orbit, j)
        return Verdict.refuted(RefutationMethod.ORBIT_CYCLE, stats={"steps": len(orbit)}, coset_orbit=tuple(orbit))
    s = orbit.index(j)
    p = len(orbit) - cycle_start if s >= cycle_start else 0

    y = apply_power(phi, g, s).payload[0]
    if y == v:
        return Verdict.found(exponent=s, member=h, stats={"steps": s + 1}, s=s, p=p)
    if p == 0:
        return Verdict.refuted(
            RefutationMethod.ORBIT_CYCLE, stats={"steps": s + 1}, coset_orbit=tuple(orbit), s=s, p=0
        )

    z = apply_power(phi, Element(G, (identity(F), j)), p).payload[0]
    F_star = _suspension_group(F)
    c = F.rank + 1
    phi_p = morphism_power(phi_free, p)
    images = [Element(F_star, apply(phi_p, a).payload) for a in generators(F)]
    images.append(Element(F_star, z.payload + (c,)))
    psi = make_morphism(F_star, F_star, images)

    start = Element(F_star, y.payload + (c,))
    goal = Element(F_star, v.payload + (c,))
    logger.debug("悬挂轨道: s=%d, p=%d, z=%s", s, p, z)
    verdict = brp_orbit(psi, start, goal, budget, allow_negative=False)
    if verdict.is_yes:
        d = verdict.yes.exponent
        return Verdict.found(exponent=s + p * d, member=h, stats=verdict.stats, s=s, p=p, d=d)
    if verdict.is_no:
        return Verdict.refuted(
            RefutationMethod.ORBIT_CYCLE,
            stats=verdict.stats,
            s=s,
            p=p,
            suspension=dict(verdict.no.data),
        )
    return verdict

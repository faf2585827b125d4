"""
轨道搜索

沿 u, uφ, uφ^{-1}, uφ², uφ^{-2}, ... 交错搜索（φ 可逆时），
否则只向前。轨道出现重复即说明整条轨道有限且已枚举完毕。
"""

import logging
from typing import Callable, Dict, Optional

from group_kernel.kernel import apply, inverse_morphism
from group_kernel.structures import Element, Morphism
from solvers.config import Budget
from solvers.verdicts import RefutationMethod, Verdict

logger = logging.getLogger(__name__)


def orbit_search(
    phi: Morphism,
    u: Element,
    predicate: Callable[[Element], bool],
    budget: Budget,
    allow_negative: Optional[bool] = None,
) -> Verdict:
    """
    搜索 k 使 predicate(uφ^k) 成立

    Args:
        phi: 自同态
        u: 起点
        predicate: 目标判定
        allow_negative: 是否搜索负指数（默认：φ 可逆时搜索）

    Returns:
        Yes(k, member) / No(orbit-cycle) / Unknown（指数或访问集超出预算）
    """
    if allow_negative is None:
        allow_negative = phi.invertible
    phi_inv = inverse_morphism(phi) if allow_negative else None

    if predicate(u):
        return Verdict.found(exponent=0, member=u, stats={"steps": 1})

    forward: Dict[Element, int] = {u: 0}
    backward: Dict[Element, int] = {u: 0}
    fwd = bwd = u
    for step in range(1, budget.max_exponent + 1):
        fwd = apply(phi, fwd)
        if predicate(fwd):
            return Verdict.found(exponent=step, member=fwd, stats={"steps": step})
        if fwd in forward:
            start = forward[fwd]
            logger.debug("✓ 正向轨道成环: 前周期 %d, 周期 %d", start, step - start)
            return Verdict.refuted(
                RefutationMethod.ORBIT_CYCLE,
                stats={"steps": step},
                direction=1,
                preperiod=start,
                period=step - start,
            )
        forward[fwd] = step

        if phi_inv is not None:
            bwd = apply(phi_inv, bwd)
            if predicate(bwd):
                return Verdict.found(exponent=-step, member=bwd, stats={"steps": step})
            if bwd in backward:
                start = backward[bwd]
                return Verdict.refuted(
                    RefutationMethod.ORBIT_CYCLE,
                    stats={"steps": step},
                    direction=-1,
                    preperiod=start,
                    period=step - start,
                )
            backward[bwd] = step

        if len(forward) + len(backward) > budget.max_visited:
            logger.warning("✗ 轨道访问集超过上限 %d", budget.max_visited)
            return Verdict.exhausted(steps=step, bound=f"max_visited={budget.max_visited}", stats={"steps": step})

    return Verdict.exhausted(
        steps=budget.max_exponent,
        bound=f"max_exponent={budget.max_exponent}",
        stats={"steps": budget.max_exponent},
    )


def brp_orbit(phi: Morphism, u: Element, v: Element, budget: Budget, allow_negative: Optional[bool] = None) -> Verdict:
    """
    Brinkmann 问题：∃k uφ^k = v

    Returns:
        Yes(k) / No（轨道成环且未命中）/ Unknown（预算耗尽）
    """
    return orbit_search(phi, u, lambda w: w == v, budget, allow_negative)


def replay_cycle(phi: Morphism, u: Element, direction: int, preperiod: int, period: int) -> bool:
    """重放 orbit-cycle 证书：uφ^{±(preperiod+period)} 必须回到 uφ^{±preperiod}"""
    step = phi if direction > 0 else inverse_morphism(phi)
    w = u
    for _ in range(preperiod):
        w = apply(step, w)
    anchor = w
    for _ in range(period):
        w = apply(step, w)
    return w == anchor

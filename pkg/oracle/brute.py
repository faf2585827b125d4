"""
暴力枚举预言机

只用群内核的乘法、求逆和态射作用直接枚举定义式中的量词，供测试交叉校验求解器。
求解器本身从不调用这里。

完整性：
- 有限群：共轭元遍历全部元素，指数沿有限轨道，结论精确
- 有限基群的 G ⋊_φ Z：t^P 在中心（P 为 φ 的阶），共轭元取 t^s v（0 ≤ s < P），GCP 精确；
  子群与陪集目标的成员关系由 brute_member 在有限商中判定
- 其余情形只在球内搜索；No 仅在检测到有限轨道且共轭元穷尽时给出
"""

import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, List, Optional, Tuple

from group_kernel.builders import morphism_order
from group_kernel.cache_service import get_computation_cache
from group_kernel.errors import BudgetExceededError
from group_kernel.kernel import apply, conjugate, generators, identity, inv, inverse_morphism, mul
from group_kernel.structures import Element, GroupFamily, GroupHandle, Morphism
from reduction.engine import generalize
from reduction.instances import ProblemInstance, ProblemKind
from solvers.verdicts import RefutationMethod, Verdict
from subset_targets.targets import Coset, FiniteSet, Subgroup, Target, member

logger = logging.getLogger(__name__)

# 球的最大元素数
MAX_BALL_SIZE = 200000

# 子群在有限商中的像（计算缓存命名空间）
QUOTIENT_CLOSURES = "oracle_quotient_closure"


@dataclass(frozen=True)
class Ball:
    """字长度量下的球（按 BFS 顺序，同层按生成元下标）"""

    group: GroupHandle
    radius: int
    elements: Tuple[Element, ...]

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def members(self) -> frozenset:
        return frozenset(self.elements)

    def __contains__(self, g: Element) -> bool:
        return g in self.members


def ball(G: GroupHandle, radius: int, max_size: int = MAX_BALL_SIZE) -> Ball:
    """
    半径 radius 的球

    Raises:
        BudgetExceededError: 元素数超过 max_size
    """
    if radius < 0:
        raise ValueError(f"半径必须非负: {radius}")
    letters: List[Element] = []
    for g in generators(G):
        letters.extend((g, inv(G, g)))
    start = identity(G)
    seen = {start}
    order = [start]
    frontier = [start]
    for _ in range(radius):
        nxt = []
        for x in frontier:
            for letter in letters:
                y = mul(G, x, letter)
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    nxt.append(y)
                    if len(order) > max_size:
                        raise BudgetExceededError(f"球的规模超过上限 {max_size}", limit=max_size)
        if not nxt:
            break
        frontier = nxt
    return Ball(group=G, radius=radius, elements=tuple(order))


def _conjugators(G: GroupHandle, radius: int) -> Tuple[List[Element], bool]:
    """候选共轭元，以及它们是否穷尽了所有情形"""
    if G.family == GroupFamily.FINITE:
        return [Element(G, i) for i in range(G.order)], True
    if G.family == GroupFamily.SEMIDIRECT and G.base.family == GroupFamily.FINITE:
        period = morphism_order(G.phi)
        if period is not None:
            base = [Element(G.base, i) for i in range(G.base.order)]
            return [Element(G, (s, v)) for s in range(period) for v in base], True
    return list(ball(G, radius).elements), False


def _orbit(phi: Morphism, g: Element, kmax: int) -> Tuple[List[Tuple[int, Element]], bool]:
    """
    按 0, 1, -1, 2, -2, ... 排列的 (k, gφ^k)，以及轨道是否有限且已走完

    正向轨道成环时：不可逆态射只有 k ≥ 0；可逆时轨道纯周期，负指数已被覆盖。
    """
    forward = [g]
    seen = {g}
    finite = False
    current = g
    for _ in range(kmax):
        current = apply(phi, current)
        if current in seen:
            finite = True
            break
        seen.add(current)
        forward.append(current)
    result = [(k, y) for k, y in enumerate(forward)]
    if phi.invertible and not finite:
        phi_inv = inverse_morphism(phi)
        current = g
        for k in range(1, kmax + 1):
            current = apply(phi_inv, current)
            result.append((-k, current))
    result.sort(key=lambda pair: (abs(pair[0]), pair[0] < 0))
    return result, finite


def _pairs(orbit: List[Tuple[int, Element]], conjugators: List[Element]) -> Iterator[Tuple[int, Element, Element]]:
    for k, y in orbit:
        for x in conjugators:
            yield k, y, x


# ==================== 独立的成员判定 ====================


def _period_in_subgroup(H: Subgroup) -> Optional[int]:
    """
    使 t^N ∈ H 且在中心的 N > 0

    φ 的阶 P 整除 N 时 t^N 在中心；τ = t^d h 满足 τ^{P|G|} = t^{Pd|G|}，故取 N = P·d·|G|。
    """
    P = morphism_order(H.group.phi)
    d = math.gcd(*H.t_exponents) if H.generators else 0
    if P is None or d == 0:
        return None
    return P * d * H.group.base.order


def _quotient_closure(H: Subgroup) -> Tuple[Optional[int], frozenset]:
    """H 在 (G ⋊_φ Z)/⟨t^N⟩ 中的像；H 在基群内时 N 为 None，直接取闭包"""
    G = H.group
    N = _period_in_subgroup(H)

    def reduce(x: Element) -> Element:
        return x if N is None else Element(G, (x.payload[0] % N, x.payload[1]))

    letters = []
    for g in H.generators:
        letters.extend((reduce(g), reduce(inv(G, g))))
    start = identity(G)
    reached = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            for letter in letters:
                y = reduce(mul(G, x, letter))
                if y not in reached:
                    reached.add(y)
                    nxt.append(y)
        frontier = nxt
    logger.debug("子群在有限商中的像: N=%s, %d 个元素", N, len(reached))
    return N, frozenset(reached)


def brute_member(K: Target, y: Element) -> bool:
    """
    y ∈ K

    有限基群 G ⋊_φ Z 上的子群与陪集不经切片，而是在商 (G ⋊_φ Z)/⟨t^N⟩ 中枚举 H 的像；
    ⟨t^N⟩ ≤ H，所以成员关系在商中保持。其余情形交给 member。
    """
    G = K.group
    if (
        isinstance(K, FiniteSet)
        or G.family != GroupFamily.SEMIDIRECT
        or G.base.family != GroupFamily.FINITE
        or morphism_order(G.phi) is None
    ):
        return member(K, y)
    if isinstance(K, Coset):
        H = K.subgroup
        y = mul(G, inv(G, K.representative), y)
    else:
        H = K
    N, closure = get_computation_cache().get_or_compute(QUOTIENT_CLOSURES, H, lambda: _quotient_closure(H))
    if N is None:
        return y in closure
    return Element(G, (y.payload[0] % N, y.payload[1])) in closure


def brute_solve(inst: ProblemInstance, radius: int = 4, kmax: int = 20) -> Verdict:
    """
    直接枚举定义式

    Args:
        inst: 问题实例
        radius: 共轭元球半径（有限情形忽略）
        kmax: 指数上限 |k|

    Returns:
        Yes（带见证）；搜索空间可证完备时 No；否则 Unknown
    """
    inst = generalize(inst)
    G = inst.group
    K = inst.target
    g = inst.subject
    kind = inst.kind

    if kind == ProblemKind.GCP:
        conjugators, complete = _conjugators(G, radius)
        for steps, x in enumerate(conjugators, start=1):
            y = conjugate(g, x)
            if brute_member(K, y):
                return Verdict.found(conjugator=x, member=y, stats={"steps": steps})
        return _give_up(complete, len(conjugators), f"ball radius {radius}")

    phi = inst.morphism
    if kind == ProblemKind.GTCP:
        complete = G.family == GroupFamily.FINITE
        conjugators = [Element(G, i) for i in range(G.order)] if complete else list(ball(G, radius).elements)
        for steps, z in enumerate(conjugators, start=1):
            y = mul(G, mul(G, apply(phi, inv(G, z)), g), z)
            if brute_member(K, y):
                return Verdict.found(conjugator=z, member=y, stats={"steps": steps})
        return _give_up(complete, len(conjugators), f"ball radius {radius}")

    orbit, finite = _orbit(phi, g, kmax)
    if kind == ProblemKind.GBRP:
        for steps, (k, y) in enumerate(orbit, start=1):
            if brute_member(K, y):
                return Verdict.found(exponent=k, member=y, stats={"steps": steps})
        return _give_up(finite, len(orbit), f"kmax={kmax}", method=RefutationMethod.ORBIT_CYCLE)

    conjugators, complete = _conjugators(G, radius)
    steps = 0
    for k, y, x in _pairs(orbit, conjugators):
        steps += 1
        candidate = conjugate(y, x)
        if brute_member(K, candidate):
            return Verdict.found(conjugator=x, exponent=k, member=candidate, stats={"steps": steps})
    return _give_up(finite and complete, steps, f"kmax={kmax}, ball radius {radius}", method=RefutationMethod.ORBIT_CYCLE)


def _give_up(complete: bool, steps: int, bound: str, method: Optional[RefutationMethod] = None) -> Verdict:
    if complete:
        return Verdict.refuted(method or RefutationMethod.EXHAUSTED_FINITE, stats={"steps": steps}, searched=steps)
    logger.debug("暴力搜索未命中（%s）", bound)
    return Verdict.exhausted(steps=steps, bound=bound, stats={"steps": steps})

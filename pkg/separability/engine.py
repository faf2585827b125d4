"""
可分性引擎：GCP_[f.g. coset] 的双半算法

- Yes 侧：按半径递增枚举共轭元 x，检查 x^{-1} a x ∈ bH
- No 侧：依次取有限商 φ_i，维护组合商 Q ≤ Π F_i 中的候选集
  S = (bH 在 Q 中的像) ∩ Π X_i，X_i 为 aφ_i 在 Gφ_i 中的共轭类；S = ∅ 即无共轭落入 bH

两侧都是可单步推进的任务，共享一个取消信号，按步数预算公平轮转。
"""

import logging
import threading
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from group_kernel.kernel import conjugate, generators, identity, inv, mul
from group_kernel.structures import Element, GroupFamily
from reduction.instances import ProblemInstance, ProblemKind
from separability.quotients import FiniteQuotientSpec, QuotientFactor, check_polycyclic, enumerate_quotients
from solvers.config import Budget
from solvers.verdicts import RefutationMethod, Verdict
from subset_targets.targets import Coset, member

logger = logging.getLogger(__name__)


# ==================== 候选状态 ====================


@dataclass(frozen=True)
class CandidateState:
    """
    No 侧的累积状态

    - factors: 当前使用的商（最早的在前）
    - size: 组合商 Q 的阶
    - survivors: Q 中仍存活的候选像
    - dropped: 因规模上限被丢弃的商
    """

    max_size: int
    factors: Tuple[FiniteQuotientSpec, ...] = ()
    size: int = 1
    survivors: frozenset = frozenset({()})
    dropped: Tuple[FiniteQuotientSpec, ...] = ()
    skipped: Tuple[FiniteQuotientSpec, ...] = field(default=(), compare=False)

    @property
    def refuted(self) -> bool:
        return not self.survivors

    @property
    def fraction(self) -> float:
        """存活比例 |S| / |Q|"""
        return len(self.survivors) / self.size


def _closure(gens: List[tuple], factors: List[QuotientFactor], limit: Optional[int]) -> Optional[List[tuple]]:
    """Q 中由 gens 生成的子群；超过 limit 时返回 None"""
    start = tuple(f.identity for f in factors)
    seen = {start}
    order = [start]
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple(f.mul(a, b) for f, a, b in zip(factors, x, g))
            if y not in seen:
                seen.add(y)
                order.append(y)
                if limit is not None and len(order) > limit:
                    return None
                queue.append(y)
    return order


def _combined_image(factors: List[QuotientFactor], g: Element) -> tuple:
    return tuple(f.image(g) for f in factors)


def _survivors(factors: List[QuotientFactor], a: Element, bH: Coset, limit: Optional[int]) -> Optional[Tuple[int, frozenset]]:
    """
    在给定因子上重算 (|Q|, S)

    Returns:
        None 表示组合商超过 limit
    """
    if not factors:
        return 1, frozenset({()})
    G = a.group
    gens = [_combined_image(factors, x) for x in generators(G)]
    gens = gens + [tuple(f.inv(y) for f, y in zip(factors, g)) for g in gens]
    elements = _closure(gens, factors, limit)
    if elements is None:
        return None
    classes = [f.conjugacy_class(f.image(a)) for f in factors]
    h_gens = [_combined_image(factors, h) for h in bH.subgroup.generators]
    h_gens = h_gens + [tuple(f.inv(y) for f, y in zip(factors, g)) for g in h_gens]
    sub = _closure(h_gens, factors, None)
    b = _combined_image(factors, bH.representative)
    survivors = set()
    for h in sub:
        y = tuple(f.mul(p, q) for f, p, q in zip(factors, b, h))
        if all(coordinate in cls for coordinate, cls in zip(y, classes)):
            survivors.add(y)
    return len(elements), frozenset(survivors)


def initial_state(max_size: int) -> CandidateState:
    return CandidateState(max_size=max_size)


def no_side_refine(state: CandidateState, q: FiniteQuotientSpec, a: Element, bH: Coset) -> CandidateState:
    """
    用商 q 细化候选集

    组合商超过 max_size 时从最早的商开始丢弃（只会扩大 S，不会产生错误的 No）；
    q 本身就超过上限时跳过并记录。
    """
    G = a.group
    check_polycyclic(G)
    new_factor = QuotientFactor(G, q)
    if q.nominal_size(new_factor.rank) > state.max_size:
        logger.warning("跳过商 %s：规模超过上限 %d", q.label, state.max_size)
        return CandidateState(
            max_size=state.max_size,
            factors=state.factors,
            size=state.size,
            survivors=state.survivors,
            dropped=state.dropped,
            skipped=state.skipped + (q,),
        )
    specs = list(state.factors) + [q]
    dropped = list(state.dropped)
    while True:
        factors = [QuotientFactor(G, s) for s in specs]
        result = _survivors(factors, a, bH, state.max_size)
        if result is not None:
            break
        dropped.append(specs.pop(0))
        logger.debug("组合商超过上限，丢弃最早的商 %s", dropped[-1].label)
    size, survivors = result
    logger.debug("商 %s 细化后 |S|=%d, |Q|=%d", q.label, len(survivors), size)
    return CandidateState(
        max_size=state.max_size,
        factors=tuple(specs),
        size=size,
        survivors=survivors,
        dropped=tuple(dropped),
        skipped=state.skipped,
    )


def replay_obstruction(specs: Tuple[FiniteQuotientSpec, ...], a: Element, bH: Coset) -> bool:
    """重放 quotient-obstruction：在记录的商上重算 S 必须为空"""
    factors = [QuotientFactor(a.group, s) for s in specs]
    result = _survivors(factors, a, bH, None)
    return result is not None and not result[1]


def candidate_representatives(state: CandidateState, a: Element, bH: Coset, step_cap: int = 1000) -> Dict[tuple, Element]:
    """
    为每个存活像找一个 bH 中的原像

    按 H 生成元字长递增枚举 b·h，每个像最多尝试 step_cap 步。
    """
    G = a.group
    factors = [QuotientFactor(G, s) for s in state.factors]
    needed = set(state.survivors)
    found: Dict[tuple, Element] = {}
    letters = list(bH.subgroup.generators) + [inv(G, h) for h in bH.subgroup.generators]
    seen = {bH.representative}
    queue = deque([bH.representative])
    steps = 0
    while queue and needed and steps < step_cap * max(len(state.survivors), 1):
        y = queue.popleft()
        steps += 1
        image = _combined_image(factors, y)
        if image in needed:
            found[image] = y
            needed.discard(image)
        for letter in letters:
            z = mul(G, y, letter)
            if z not in seen:
                seen.add(z)
                queue.append(z)
    return found


# ==================== Yes 侧 ====================


def ball_layers(G) -> Iterator[List[Element]]:
    """按字长分层产出球（第 0 层为单位元），生成元顺序为 g_1, g_1^{-1}, g_2, ..."""
    letters = []
    for g in generators(G):
        letters.extend((g, inv(G, g)))
    start = identity(G)
    seen = {start}
    layer = [start]
    while layer:
        yield layer
        nxt = []
        for x in layer:
            for letter in letters:
                y = mul(G, x, letter)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        layer = nxt


def yes_side_step(a: Element, bH: Coset, radius: int) -> Optional[Tuple[Element, Element]]:
    """
    在半径 radius 的球内找 x 使 x^{-1} a x ∈ bH

    Returns:
        (x, x^{-1} a x) 或 None
    """
    for depth, layer in enumerate(ball_layers(a.group)):
        if depth > radius:
            break
        for x in layer:
            candidate = conjugate(a, x)
            if member(bH, candidate):
                return x, candidate
    return None


class YesSideTask:
    """Yes 侧任务：每步检查球的下一层"""

    def __init__(self, a: Element, bH: Coset, max_radius: int, cancel: threading.Event):
        self.a = a
        self.bH = bH
        self.max_radius = max_radius
        self.cancel = cancel
        self.radius = -1
        self.witness: Optional[Tuple[Element, Element]] = None
        self._layers = ball_layers(a.group)

    @property
    def exhausted(self) -> bool:
        return self.radius >= self.max_radius

    def step(self) -> int:
        """检查下一层，返回消耗的步数"""
        if self.exhausted or self.cancel.is_set():
            return 0
        layer = next(self._layers, [])
        self.radius += 1
        for cost, x in enumerate(layer, start=1):
            candidate = conjugate(self.a, x)
            if member(self.bH, candidate):
                self.witness = (x, candidate)
                self.cancel.set()
                return cost
        if not layer:
            self.radius = self.max_radius
        return max(len(layer), 1)


class NoSideTask:
    """No 侧任务：每步用商流中的下一个商细化候选集"""

    def __init__(self, a: Element, bH: Coset, budget: Budget, cancel: threading.Event):
        self.a = a
        self.bH = bH
        self.cancel = cancel
        self.state = initial_state(budget.max_quotient_size)
        self._stream = enumerate_quotients(a.group, budget)
        self.quotients_used = 0
        self.exhausted = False

    def step(self) -> int:
        if self.exhausted or self.cancel.is_set():
            return 0
        spec = next(self._stream, None)
        if spec is None:
            self.exhausted = True
            return 1
        self.state = no_side_refine(self.state, spec, self.a, self.bH)
        self.quotients_used += 1
        if self.state.refuted:
            self.cancel.set()
        return max(self.state.size, 1)


def decide_gcp_coset(a: Element, bH: Coset, budget: Budget) -> Verdict:
    """
    GCP(bH, a)：公平轮转 Yes 侧与 No 侧

    有限群直接穷举；Z^n ⋊_A Z 上两侧交替推进直到一侧给出证书、两侧都用尽或步数用完。

    Returns:
        Yes(conjugator, member) / No(quotient-obstruction) / Unknown
    """
    G = a.group
    if G.family == GroupFamily.FINITE:
        from solvers.finite_solvers import solve_finite

        return solve_finite(ProblemInstance(kind=ProblemKind.GCP, group=G, subject=a, target=bH))
    check_polycyclic(G)

    cancel = threading.Event()
    yes_task = YesSideTask(a, bH, budget.ball_radius, cancel)
    no_task = NoSideTask(a, bH, budget, cancel)
    steps = 0
    while steps < budget.max_steps:
        if yes_task.exhausted and no_task.exhausted:
            break
        steps += yes_task.step()
        if yes_task.witness is not None:
            x, candidate = yes_task.witness
            logger.info("✓ Yes 侧在半径 %d 找到共轭元", yes_task.radius)
            return Verdict.found(
                conjugator=x,
                member=candidate,
                stats=_stats(steps, yes_task, no_task),
                radius=yes_task.radius,
            )
        if steps >= budget.max_steps:
            break
        steps += no_task.step()
        if no_task.state.refuted:
            specs = no_task.state.factors
            logger.info("✓ No 侧在 %d 个商后候选集为空", no_task.quotients_used)
            return Verdict.refuted(
                RefutationMethod.QUOTIENT_OBSTRUCTION,
                stats=_stats(steps, yes_task, no_task),
                quotients=tuple(s.label for s in specs),
                moduli=tuple(s.modulus for s in specs if s.is_congruence),
                specs=specs,
            )
    bound = f"max_steps={budget.max_steps}" if steps >= budget.max_steps else "quotient stream and ball exhausted"
    logger.info("✗ 可分性引擎未判定（%s）", bound)
    return Verdict.exhausted(steps=steps, bound=bound, stats=_stats(steps, yes_task, no_task))


def _stats(steps: int, yes_task: YesSideTask, no_task: NoSideTask) -> Dict[str, int]:
    return {
        "steps": steps,
        "quotients": no_task.quotients_used,
        "max_radius": max(yes_task.radius, 0),
    }

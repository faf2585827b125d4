"""
三值判定结果与证书
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, Optional, Tuple

from group_kernel.structures import Element


class Outcome(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class RefutationMethod(str, Enum):
    """No 证书的方法标签"""

    EXHAUSTED_FINITE = "exhausted-finite"
    ORBIT_CYCLE = "orbit-cycle"
    LATTICE_OBSTRUCTION = "lattice-obstruction"
    QUOTIENT_OBSTRUCTION = "quotient-obstruction"
    AUTOMATON_SWEEP = "automaton-sweep"
    PLAN_EXHAUSTED = "plan-exhausted"


@dataclass(frozen=True)
class YesCertificate:
    """
    Yes 见证

    - conjugator: 共轭元 x / z（按问题种类代入定义式）
    - exponent: 指数 k
    - member: 落入目标的元素
    - extra: 额外数据（如 (p, q)、计划成员下标）
    """

    conjugator: Optional[Element] = None
    exponent: Optional[int] = None
    member: Optional[Element] = None
    extra: Dict[str, Any] = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class NoCertificate:
    method: RefutationMethod
    data: Dict[str, Any] = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class BudgetReport:
    steps: int
    bound: str


@dataclass(frozen=True)
class Verdict:
    """
    判定结果

    outcome 为 YES 时 yes 必有值，NO 时 no 必有值，UNKNOWN 时 unknown 必有值。
    stats 记录步数、使用的商群数、最大半径，不参与比较。
    """

    outcome: Outcome
    yes: Optional[YesCertificate] = None
    no: Optional[NoCertificate] = None
    unknown: Optional[BudgetReport] = None
    stats: Dict[str, Any] = field(default_factory=dict, compare=False)

    @classmethod
    def found(
        cls,
        conjugator: Optional[Element] = None,
        exponent: Optional[int] = None,
        member: Optional[Element] = None,
        stats: Optional[Dict[str, Any]] = None,
        **extra,
    ) -> "Verdict":
        return cls(
            outcome=Outcome.YES,
            yes=YesCertificate(conjugator=conjugator, exponent=exponent, member=member, extra=extra),
            stats=stats or {},
        )

    @classmethod
    def refuted(cls, method: RefutationMethod, stats: Optional[Dict[str, Any]] = None, **data) -> "Verdict":
        return cls(outcome=Outcome.NO, no=NoCertificate(method=method, data=data), stats=stats or {})

    @classmethod
    def exhausted(cls, steps: int, bound: str, stats: Optional[Dict[str, Any]] = None) -> "Verdict":
        return cls(outcome=Outcome.UNKNOWN, unknown=BudgetReport(steps=steps, bound=bound), stats=stats or {})

    @property
    def is_yes(self) -> bool:
        return self.outcome == Outcome.YES

    @property
    def is_no(self) -> bool:
        return self.outcome == Outcome.NO

    @property
    def is_unknown(self) -> bool:
        return self.outcome == Outcome.UNKNOWN


def combine_verdicts(verdicts: Iterable[Verdict]) -> Tuple[Verdict, Optional[int]]:
    """
    OR 组合：第一个 Yes 胜出；全部 No 为 No；否则 Unknown

    Returns:
        (组合结果, 胜出 Yes 的下标或 None)
    """
    verdicts = list(verdicts)
    for index, verdict in enumerate(verdicts):
        if verdict.is_yes:
            return verdict, index
    steps = sum(v.stats.get("steps", 0) for v in verdicts)
    if all(v.is_no for v in verdicts):
        methods = [v.no.method.value for v in verdicts]
        return Verdict.refuted(RefutationMethod.PLAN_EXHAUSTED, stats={"steps": steps}, members=methods), None
    bounds = [v.unknown.bound for v in verdicts if v.is_unknown]
    return Verdict.exhausted(steps=steps, bound="; ".join(bounds), stats={"steps": steps}), None

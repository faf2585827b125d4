"""
问题文件求解

每个问题独立求解并产生一条 VerdictRecord。记录只含可比较的内容（无时间戳、无耗时），
相同输入与参数得到逐字节相同的报告；耗时等指标只进入 monitoring。
"""

import logging
import time
from dataclasses import is_dataclass
from enum import Enum
from typing import Any, Dict, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PositiveInt

from group_kernel.errors import BudgetExceededError, CapabilityError, GroupInputError
from group_kernel.notation import format_element
from group_kernel.structures import Element
from monitoring.metrics import get_metrics, log_summary
from problem_io.builder import BuiltProblem, build
from problem_io.models import ProblemFile
from separability.quotients import FiniteQuotientSpec
from solvers.config import Budget
from solvers.dispatcher import solve, verify_certificate
from solvers.verdicts import Verdict

logger = logging.getLogger(__name__)

RecordVerdict = Literal["yes", "no", "unknown", "unsupported", "error"]

_BUDGET_FIELDS = (
    "max_exponent",
    "ball_radius",
    "max_quotient_size",
    "max_steps",
    "max_visited",
    "generic_quotient_fallback",
    "generic_max_degree",
)


class RunOptions(BaseModel):
    """CLI 参数（预算项为 None 时沿用配置）"""

    model_config = ConfigDict(frozen=True)

    json_output: bool = Field(default=False, description="只输出 JSON 记录")
    certify: bool = Field(default=False, description="输出前复核每个 Yes 证书")
    max_exponent: Optional[PositiveInt] = None
    ball_radius: Optional[PositiveInt] = None
    max_quotient_size: Optional[PositiveInt] = None
    max_steps: Optional[PositiveInt] = None
    max_visited: Optional[PositiveInt] = None
    generic_quotient_fallback: Optional[bool] = None
    generic_max_degree: Optional[PositiveInt] = None
    workers: PositiveInt = Field(default=1, description="并行求解的线程数")

    def budget_changes(self) -> Dict[str, Any]:
        return {key: getattr(self, key) for key in _BUDGET_FIELDS}


class RecordStats(BaseModel):
    model_config = ConfigDict(frozen=True)

    steps: int = 0
    quotients: int = 0
    max_radius: int = 0


class VerdictRecord(BaseModel):
    """单个问题的求解记录"""

    model_config = ConfigDict(frozen=True)

    problem: str = Field(..., description="问题名")
    kind: str = Field(..., description="问题种类")
    verdict: RecordVerdict = Field(..., description="yes / no / unknown / unsupported / error")
    certificate: Dict[str, Any] = Field(default_factory=dict, description="见证或反驳数据")
    stats: RecordStats = Field(default_factory=RecordStats)
    certified: Optional[bool] = Field(None, description="--certify 时 Yes 证书的复核结果")
    reason: Optional[str] = Field(None, description="unsupported / error 的原因")

    def to_line(self) -> str:
        return self.model_dump_json(exclude_none=True)

    def summary(self) -> str:
        """人类可读的一行摘要"""
        head = f"{self.problem} [{self.kind}]: {self.verdict}"
        cert = self.certificate
        if self.verdict == "yes":
            parts = [f"{key}={cert[key]}" for key in ("exponent", "conjugator", "member") if key in cert]
            if self.certified is not None:
                parts.append("certified" if self.certified else "CERTIFICATE FAILED")
            return f"{head} ({', '.join(parts)})"
        if self.verdict == "no":
            return f"{head} ({cert.get('method')})"
        if self.verdict == "unknown":
            return f"{head} (steps={self.stats.steps}, bound={cert.get('bound')})"
        return f"{head} ({self.reason})"


class RunReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    records: List[VerdictRecord] = Field(default_factory=list)

    def lines(self, json_only: bool = False) -> List[str]:
        output = [record.to_line() for record in self.records]
        if not json_only:
            output.extend(record.summary() for record in self.records)
        return output

    def count(self, verdict: str) -> int:
        return sum(1 for record in self.records if record.verdict == verdict)


# ==================== 证书转 JSON ====================


def _jsonable(value: Any) -> Any:
    if isinstance(value, Element):
        return format_element(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, FiniteQuotientSpec):
        return value.label
    if isinstance(value, (bool, str)) or value is None:
        return value
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, (int, float)):
        return value
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted((_jsonable(v) for v in value), key=str)
    if is_dataclass(value):
        return str(value)
    return str(value)


def certificate_of(verdict: Verdict) -> Dict[str, Any]:
    """Verdict → 可序列化的证书字典"""
    if verdict.is_yes:
        yes = verdict.yes
        cert: Dict[str, Any] = {}
        if yes.exponent is not None:
            cert["exponent"] = yes.exponent
        if yes.conjugator is not None:
            cert["conjugator"] = format_element(yes.conjugator)
        if yes.member is not None:
            cert["member"] = format_element(yes.member)
        cert.update({key: _jsonable(value) for key, value in yes.extra.items()})
        return cert
    if verdict.is_no:
        cert = {"method": verdict.no.method.value}
        cert.update({key: _jsonable(value) for key, value in verdict.no.data.items()})
        return cert
    return {"steps": verdict.unknown.steps, "bound": verdict.unknown.bound}


def _record_stats(stats: Dict[str, Any]) -> RecordStats:
    return RecordStats(
        steps=int(stats.get("steps", 0)),
        quotients=int(stats.get("quotients", 0)),
        max_radius=int(stats.get("max_radius", 0)),
    )


# ==================== 求解 ====================


def solve_problem(problem: BuiltProblem, base_budget: Budget, certify: bool = False) -> VerdictRecord:
    """
    求解单个问题（预算优先级：配置 < CLI < 问题内覆盖）

    能力缺口转为 unsupported 记录，输入错误与其余异常转为 error 记录，不向外抛出。
    """
    inst = problem.instance
    kind = inst.kind.value
    metrics = get_metrics()
    budget = base_budget.override(**problem.overrides.model_dump())
    start = time.perf_counter()
    try:
        verdict = solve(inst, budget, problem.method)
    except CapabilityError as e:
        metrics.record_unsupported()
        logger.warning("✗ %s 不受支持: %s", problem.name, e.missing)
        return VerdictRecord(problem=problem.name, kind=kind, verdict="unsupported", reason=str(e))
    except BudgetExceededError as e:
        metrics.record_verdict("unknown")
        logger.info("✗ %s 超出规模上限 %s", problem.name, e.limit)
        return VerdictRecord(
            problem=problem.name,
            kind=kind,
            verdict="unknown",
            certificate={"steps": 0, "bound": str(e)},
        )
    except GroupInputError as e:
        logger.error("✗ %s 输入错误: %s", problem.name, e)
        return VerdictRecord(problem=problem.name, kind=kind, verdict="error", reason=str(e))
    except Exception as e:
        logger.error("✗ %s 求解异常: %s", problem.name, e, exc_info=True)
        return VerdictRecord(problem=problem.name, kind=kind, verdict="error", reason=str(e))
    finally:
        metrics.record_solve_time(time.perf_counter() - start)

    metrics.record_verdict(verdict.outcome.value, verdict.stats)
    certified = None
    if certify and verdict.is_yes:
        certified = verify_certificate(inst, verdict)
        metrics.record_certification(bool(certified))
    return VerdictRecord(
        problem=problem.name,
        kind=kind,
        verdict=verdict.outcome.value,
        certificate=certificate_of(verdict),
        stats=_record_stats(verdict.stats),
        certified=certified,
    )


def run(problem_file: ProblemFile, options: Optional[RunOptions] = None) -> RunReport:
    """
    求解文件中的全部问题，记录顺序与文件顺序一致

    Args:
        problem_file: 已解析的问题文件
        options: CLI 参数

    Returns:
        RunReport
    """
    options = options or RunOptions()
    built = build(problem_file)
    budget = Budget.from_settings().override(**options.budget_changes())
    problems = list(built.problems)
    logger.info("开始求解 %d 个问题 (workers=%d, certify=%s)", len(problems), options.workers, options.certify)

    if options.workers > 1 and len(problems) > 1:
        from problem_io.parallel_executor import ParallelProblemExecutor

        with ParallelProblemExecutor(max_workers=options.workers) as executor:
            records = executor.execute_parallel(problems, budget, options.certify)
    else:
        records = [solve_problem(problem, budget, options.certify) for problem in problems]

    log_summary()
    return RunReport(records=records)

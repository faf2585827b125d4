"""
求解指标收集

统计判定结果分布、证书复核、步数与耗时；只写日志，不进入可比较的求解记录。
"""

import logging
import time
from dataclasses import dataclass, field
from threading import Lock
from typing import Any, Dict, Optional

logger = logging.getLogger(__name__)


@dataclass
class SolverMetrics:
    """
    求解指标收集器

    收集：
    - Yes / No / Unknown / unsupported 计数
    - 证书复核通过与失败数
    - 累计步数、使用的商群数
    - 单题耗时
    """

    yes_count: int = 0
    no_count: int = 0
    unknown_count: int = 0
    unsupported_count: int = 0

    certified_ok: int = 0
    certified_failed: int = 0

    total_steps: int = 0
    total_quotients: int = 0

    # 单题耗时（秒）
    solve_times: list = field(default_factory=list)

    _lock: Lock = field(default_factory=Lock, repr=False)
    start_time: float = field(default_factory=time.time)

    def record_verdict(self, outcome: str, stats: Optional[Dict[str, Any]] = None):
        """
        记录一个判定结果

        Args:
            outcome: yes / no / unknown
            stats: 求解统计（steps、quotients）
        """
        stats = stats or {}
        with self._lock:
            if outcome == "yes":
                self.yes_count += 1
            elif outcome == "no":
                self.no_count += 1
            else:
                self.unknown_count += 1
            self.total_steps += int(stats.get("steps", 0))
            self.total_quotients += int(stats.get("quotients", 0))

    def record_unsupported(self):
        """记录无适用判定器的问题"""
        with self._lock:
            self.unsupported_count += 1

    def record_certification(self, ok: bool):
        with self._lock:
            if ok:
                self.certified_ok += 1
            else:
                self.certified_failed += 1

    def record_solve_time(self, duration: float):
        """
        记录单题耗时

        Args:
            duration: 耗时（秒）
        """
        with self._lock:
            self.solve_times.append(duration)
            # 保留最近1000条记录
            if len(self.solve_times) > 1000:
                self.solve_times = self.solve_times[-1000:]

    @property
    def problems(self) -> int:
        return self.yes_count + self.no_count + self.unknown_count + self.unsupported_count

    @property
    def decided_rate(self) -> float:
        """Yes/No 占比"""
        return (self.yes_count + self.no_count) / self.problems if self.problems > 0 else 0.0

    @property
    def avg_solve_time(self) -> float:
        return sum(self.solve_times) / len(self.solve_times) if self.solve_times else 0.0

    @property
    def max_solve_time(self) -> float:
        return max(self.solve_times) if self.solve_times else 0.0

    def get_summary(self) -> Dict[str, Any]:
        """
        获取统计摘要

        Returns:
            统计摘要字典
        """
        with self._lock:
            return {
                "elapsed_seconds": time.time() - self.start_time,
                "verdicts": {
                    "problems": self.problems,
                    "yes": self.yes_count,
                    "no": self.no_count,
                    "unknown": self.unknown_count,
                    "unsupported": self.unsupported_count,
                    "decided_rate": f"{self.decided_rate:.2%}",
                },
                "certificates": {
                    "verified": self.certified_ok,
                    "failed": self.certified_failed,
                },
                "work": {
                    "steps": self.total_steps,
                    "quotients": self.total_quotients,
                },
                "performance": {
                    "avg_solve_time": f"{self.avg_solve_time:.3f}s",
                    "max_solve_time": f"{self.max_solve_time:.3f}s",
                    "sample_count": len(self.solve_times),
                },
            }

    def reset(self):
        """重置所有统计"""
        with self._lock:
            self.yes_count = 0
            self.no_count = 0
            self.unknown_count = 0
            self.unsupported_count = 0
            self.certified_ok = 0
            self.certified_failed = 0
            self.total_steps = 0
            self.total_quotients = 0
            self.solve_times.clear()
            self.start_time = time.time()


# 全局指标收集器实例
_global_metrics: Optional[SolverMetrics] = None
_metrics_lock = Lock()


def get_metrics() -> SolverMetrics:
    """
    获取全局指标收集器实例（单例模式）

    Returns:
        SolverMetrics 实例
    """
    global _global_metrics
    if _global_metrics is None:
        with _metrics_lock:
            if _global_metrics is None:
                _global_metrics = SolverMetrics()
                logger.debug("✓ SolverMetrics 初始化完成")
    return _global_metrics


def reset_metrics():
    """重置全局指标收集器（主要用于测试）"""
    global _global_metrics
    with _metrics_lock:
        _global_metrics = None


def log_summary(metrics: Optional[SolverMetrics] = None):
    """按统一格式输出指标摘要"""
    summary = (metrics or get_metrics()).get_summary()
    verdicts = summary["verdicts"]
    logger.info(
        "[求解统计] 共 %d 题 | yes %d | no %d | unknown %d | unsupported %d | 平均耗时 %s",
        verdicts["problems"],
        verdicts["yes"],
        verdicts["no"],
        verdicts["unknown"],
        verdicts["unsupported"],
        summary["performance"]["avg_solve_time"],
    )
    certificates = summary["certificates"]
    if certificates["verified"] or certificates["failed"]:
        logger.info("[证书复核] 通过 %d | 失败 %d", certificates["verified"], certificates["failed"])

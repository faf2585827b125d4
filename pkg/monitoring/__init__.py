"""
运维监控模块
提供求解指标收集与统一的摘要日志
"""

from monitoring.metrics import SolverMetrics, get_metrics, log_summary, reset_metrics

__all__ = [
    "SolverMetrics",
    "get_metrics",
    "log_summary",
    "reset_metrics",
]

"""
并行问题执行器
多个问题互相独立，按线程池并行求解，结果按文件顺序返回
"""

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import List

from problem_io.builder import BuiltProblem
from problem_io.runner import VerdictRecord, solve_problem
from solvers.config import Budget

logger = logging.getLogger(__name__)


class ParallelProblemExecutor:
    """
    并行问题执行器

    功能：
    1. 并行求解多个问题
    2. 单个问题的意外异常转为 error 记录
    3. 结果恢复为提交顺序
    """

    def __init__(self, max_workers: int = 4):
        """
        Args:
            max_workers: 最大并行数
        """
        self.max_workers = max_workers
        self.executor = ThreadPoolExecutor(max_workers=max_workers, thread_name_prefix="gbz-solve")
        logger.info("ParallelProblemExecutor 初始化完成 (max_workers=%d)", max_workers)

    def execute_parallel(self, problems: List[BuiltProblem], budget: Budget, certify: bool = False) -> List[VerdictRecord]:
        """
        并行求解

        Args:
            problems: 已构造的问题（文件顺序）
            budget: CLI 层预算，问题内覆盖在 solve_problem 中叠加
            certify: 是否复核 Yes 证书

        Returns:
            List[VerdictRecord]: 与 problems 顺序一致的记录
        """
        if not problems:
            logger.warning("问题列表为空，无需执行")
            return []

        futures = {
            self.executor.submit(solve_problem, problem, budget, certify): index
            for index, problem in enumerate(problems)
        }

        results = {}
        for future in as_completed(futures):
            index = futures[future]
            problem = problems[index]
            try:
                results[index] = future.result()
                logger.debug("[问题 %d] %s 完成: %s", index + 1, problem.name, results[index].verdict)
            except Exception as exc:
                logger.error("[问题 %d] %s 执行异常: %s", index + 1, problem.name, exc, exc_info=True)
                results[index] = VerdictRecord(
                    problem=problem.name,
                    kind=problem.instance.kind.value,
                    verdict="error",
                    reason=str(exc),
                )

        ordered = [results[index] for index in range(len(problems))]
        decided = sum(1 for record in ordered if record.verdict in ("yes", "no"))
        logger.info("并行求解完成: 判定 %d 个，未判定 %d 个", decided, len(ordered) - decided)
        return ordered

    def shutdown(self):
        """关闭执行器"""
        logger.info("关闭 ParallelProblemExecutor")
        self.executor.shutdown(wait=True)

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.shutdown()

"""
并行问题执行器测试
"""

import time

from problem_io.builder import build
from problem_io.parallel_executor import ParallelProblemExecutor
from problem_io.parser import parse_text
from problem_io.runner import RunOptions, VerdictRecord, run
from solvers.config import Budget


class TestParallelProblemExecutor:
    def test_results_keep_file_order(self, sample_text, monkeypatch):
        """先提交的问题更慢，结果仍按文件顺序返回"""
        problems = list(build(parse_text(sample_text)).problems)
        delays = {p.name: 0.05 * (len(problems) - i) for i, p in enumerate(problems)}

        def slow_solve(problem, budget, certify=False):
            time.sleep(delays[problem.name])
            return VerdictRecord(problem=problem.name, kind=problem.instance.kind.value, verdict="unknown")

        monkeypatch.setattr("problem_io.parallel_executor.solve_problem", slow_solve)
        with ParallelProblemExecutor(max_workers=4) as executor:
            records = executor.execute_parallel(problems, Budget())
        assert [r.problem for r in records] == [p.name for p in problems]

    def test_unexpected_exception_becomes_error(self, sample_text, monkeypatch):
        problems = list(build(parse_text(sample_text)).problems)[:2]

        def explode(problem, budget, certify=False):
            if problem.name == "blocked":
                raise RuntimeError("boom")
            return VerdictRecord(problem=problem.name, kind=problem.instance.kind.value, verdict="yes")

        monkeypatch.setattr("problem_io.parallel_executor.solve_problem", explode)
        with ParallelProblemExecutor(max_workers=2) as executor:
            records = executor.execute_parallel(problems, Budget())
        assert [r.verdict for r in records] == ["yes", "error"]
        assert records[1].reason == "boom"

    def test_empty(self):
        with ParallelProblemExecutor(max_workers=2) as executor:
            assert executor.execute_parallel([], Budget()) == []

    def test_parallel_run_matches_serial(self, sample_text):
        serial = run(parse_text(sample_text), RunOptions(certify=True)).lines()
        parallel = run(parse_text(sample_text), RunOptions(certify=True, workers=3)).lines()
        assert serial == parallel

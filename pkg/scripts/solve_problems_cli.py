#!/usr/bin/env python
"""
CLI: 解析问题文件，逐题求解并输出判定记录。

    python -m scripts.solve_problems_cli --input problems.txt --certify

每个问题输出一行 JSON 记录；未加 --json 时再附一段人类可读摘要。
退出码：正常运行为 0（与判定结果无关），解析或读取失败为 2。
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import List, Optional

from group_kernel.errors import GroupInputError
from problem_io.parser import ProblemFileError, parse
from problem_io.runner import RunOptions, run
from solvers.config import get_solver_settings

logger = logging.getLogger(__name__)

EXIT_INPUT_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Solve G-by-Z conjugacy / Brinkmann problems from a problem file.")
    parser.add_argument("--input", required=True, help="Problem file path")
    parser.add_argument("--json", action="store_true", help="Emit JSON records only")
    parser.add_argument("--certify", action="store_true", help="Re-verify every Yes certificate before emission")
    parser.add_argument("--max-exponent", type=int, help="Orbit search bound |k|")
    parser.add_argument("--ball-radius", type=int, help="Conjugator ball radius")
    parser.add_argument("--max-quotient-size", type=int, help="Largest finite quotient order")
    parser.add_argument("--max-steps", type=int, help="Separability engine step budget")
    parser.add_argument(
        "--generic-quotient-fallback",
        action="store_true",
        default=None,
        help="Also enumerate homomorphisms to symmetric groups",
    )
    parser.add_argument("--workers", type=int, help="Solve problems in parallel (output keeps file order)")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    settings = get_solver_settings()
    logging.basicConfig(
        level=getattr(logging, settings.log_level.upper(), logging.INFO),
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        options = RunOptions(
            json_output=args.json,
            certify=args.certify,
            max_exponent=args.max_exponent,
            ball_radius=args.ball_radius,
            max_quotient_size=args.max_quotient_size,
            max_steps=args.max_steps,
            generic_quotient_fallback=args.generic_quotient_fallback,
            workers=args.workers or settings.workers,
        )
    except ValueError as e:
        print(f"[error] invalid flags: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    try:
        problem_file = parse(args.input)
        report = run(problem_file, options)
    except ProblemFileError as e:
        print(str(e), file=sys.stderr)
        return EXIT_INPUT_ERROR
    except GroupInputError as e:
        print(f"[error] {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except OSError as e:
        print(f"[error] cannot read {args.input}: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    for line in report.lines(json_only=options.json_output):
        print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""
暴力枚举预言机（仅供测试）
"""

from oracle.brute import Ball, ball, brute_solve

__all__ = ["Ball", "ball", "brute_solve"]

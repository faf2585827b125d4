"""
Z^n 的子群（整数格）

以行 Hermite 正规形作规范表示：主元列严格递增、主元为正、主元上方的元素约化到 [0, 主元)。
同一子群的任意生成集都得到同一组基。
"""

import logging
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import List, Optional, Sequence, Tuple

import numpy as np
from sympy import divisors

from group_kernel import integer_matrix as im

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """扩展欧几里得：返回 (g, x, y)，x·a + y·b = g ≥ 0"""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def bezout(values: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """
    多个整数的 gcd 及 Bezout 系数

    Returns:
        (d, λ)，Σ λ_i·values_i = d = gcd(values) ≥ 0
    """
    d = 0
    coefficients: List[int] = []
    for value in values:
        g, x, y = xgcd(d, value)
        coefficients = [c * x for c in coefficients] + [y]
        d = g
    return d, tuple(coefficients)


def echelon_with_transform(matrix: np.ndarray) -> Tuple[np.ndarray, np.ndarray, int]:
    """
    行 Hermite 正规形及变换矩阵

    采用行约定（上三角）：各行主元严格右移且为正，主元上方的元素约化到 [0, 主元)。
    它是转置矩阵的列 Hermite 正规形（下三角）的转置，两种约定生成同一个格。

    Returns:
        (H, U, rank)，U 幺模且 U·matrix = H，H 的前 rank 行非零
    """
    m, n = matrix.shape
    A = matrix.copy().astype(object)
    U = im.identity_matrix(m)
    row = 0
    for col in range(n):
        if row >= m:
            break
        for i in range(row + 1, m):
            b = A[i, col]
            if b == 0:
                continue
            a = A[row, col]
            g, x, y = xgcd(int(a), int(b))
            top_a, top_u = A[row].copy(), U[row].copy()
            A[row] = x * top_a + y * A[i]
            U[row] = x * top_u + y * U[i]
            A[i] = (-b // g) * top_a + (a // g) * A[i]
            U[i] = (-b // g) * top_u + (a // g) * U[i]
        pivot = A[row, col]
        if pivot == 0:
            continue
        if pivot < 0:
            A[row] = -A[row]
            U[row] = -U[row]
            pivot = -pivot
        for k in range(row):
            q = A[k, col] // pivot
            if q:
                A[k] = A[k] - q * A[row]
                U[k] = U[k] - q * U[row]
        row += 1
    return A, U, row


def hermite_basis(rows: Sequence[Sequence[int]], dim: int) -> Tuple[Vector, ...]:
    rows = [tuple(int(x) for x in r) for r in rows if any(r)]
    if not rows:
        return ()
    H, _, rank = echelon_with_transform(im.as_matrix(rows))
    return im.to_rows(H[:rank])


def left_kernel(rows: Sequence[Sequence[int]]) -> List[Vector]:
    """满足 λ·M = 0 的整数向量 λ 的一组基"""
    if not rows:
        return []
    H, U, rank = echelon_with_transform(im.as_matrix(rows))
    return [tuple(int(x) for x in U[i]) for i in range(rank, len(rows))]


@dataclass(frozen=True)
class LatticeSubgroup:
    """Z^dim 的子群，basis 为 HNF 行"""

    dim: int
    basis: Tuple[Vector, ...] = ()

    @classmethod
    def from_generators(cls, rows: Sequence[Sequence[int]], dim: int) -> "LatticeSubgroup":
        for r in rows:
            if len(r) != dim:
                raise ValueError(f"向量长度 {len(r)} 与维数 {dim} 不符")
        return cls(dim=dim, basis=hermite_basis(rows, dim))

    @classmethod
    def full(cls, dim: int) -> "LatticeSubgroup":
        return cls(dim=dim, basis=tuple(tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)))

    @classmethod
    def scaled(cls, dim: int, m: int) -> "LatticeSubgroup":
        """m·Z^dim"""
        return cls.from_generators([tuple(m if i == j else 0 for j in range(dim)) for i in range(dim)], dim)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def is_full_rank(self) -> bool:
        return self.rank == self.dim

    def pivots(self) -> List[int]:
        return [next(j for j, x in enumerate(row) if x) for row in self.basis]

    def residue(self, v: Sequence[int]) -> Vector:
        """v 对基的约化余量：v ∈ L 当且仅当余量为零；同一陪集余量相同"""
        v = list(int(x) for x in v)
        for row, col in zip(self.basis, self.pivots()):
            q = v[col] // row[col]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return tuple(v)

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.residue(v))

    def solve(self, v: Sequence[int]) -> Optional[Tuple[int, ...]]:
        """求系数 λ 使 λ·basis = v；v ∉ L 时返回 None"""
        v = list(int(x) for x in v)
        coefficients = []
        for row, col in zip(self.basis, self.pivots()):
            q = v[col] // row[col]
            coefficients.append(q)
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        if any(v):
            return None
        return tuple(coefficients)

    def sum(self, other: "LatticeSubgroup") -> "LatticeSubgroup":
        return LatticeSubgroup.from_generators(list(self.basis) + list(other.basis), self.dim)

    def intersect(self, other: "LatticeSubgroup") -> "LatticeSubgroup":
        """L1 ∩ L2：[B1; -B2] 的左核中 λ 部分乘 B1"""
        if not self.basis or not other.basis:
            return LatticeSubgroup(dim=self.dim)
        stacked = list(self.basis) + [tuple(-x for x in row) for row in other.basis]
        rows = []
        for kernel_row in left_kernel(stacked):
            head = kernel_row[: self.rank]
            rows.append(tuple(sum(c * row[j] for c, row in zip(head, self.basis)) for j in range(self.dim)))
        return LatticeSubgroup.from_generators(rows, self.dim)

    def image(self, matrix: np.ndarray) -> "LatticeSubgroup":
        """L·A"""
        return LatticeSubgroup.from_generators([im.vec_mat(row, matrix) for row in self.basis], self.dim)

    def index(self) -> Optional[int]:
        """[Z^n : L]，无限时返回 None"""
        if not self.is_full_rank:
            return None
        result = 1
        for row, col in zip(self.basis, self.pivots()):
            result *= row[col]
        return result

    def exponent(self) -> Optional[int]:
        """Z^n / L 的方次数（最小的 m 使 mZ^n ⊆ L）；无限指数时返回 None"""
        index = self.index()
        if index is None:
            return None
        if self.dim == 0:
            return 1
        orders = []
        candidates = divisors(index)
        for i in range(self.dim):
            unit = [0] * self.dim
            for d in candidates:
                unit[i] = d
                if self.contains(unit):
                    orders.append(d)
                    break
        return reduce(lambda a, b: a * b // gcd(a, b), orders, 1)

    def contains_lattice(self, other: "LatticeSubgroup") -> bool:
        return all(self.contains(row) for row in other.basis)

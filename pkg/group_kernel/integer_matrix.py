"""
精确整数矩阵工具

numpy 数组统一使用 dtype=object，元素为 Python int，避免溢出；
逆矩阵与行列式交给 sympy 做有理数精确计算。
约定：向量为行向量，作用为 v ↦ v @ A。
"""

from typing import Optional, Sequence, Tuple

import numpy as np
from sympy import Matrix

IntRows = Tuple[Tuple[int, ...], ...]


def as_matrix(rows: Sequence[Sequence[int]]) -> np.ndarray:
    """转为 object 数组（空矩阵保持二维形状）"""
    rows = [list(map(int, row)) for row in rows]
    if not rows:
        return np.zeros((0, 0), dtype=object)
    return np.array(rows, dtype=object).reshape(len(rows), len(rows[0]))


def to_rows(matrix: np.ndarray) -> IntRows:
    return tuple(tuple(int(x) for x in row) for row in matrix)


def identity_matrix(n: int) -> np.ndarray:
    return np.eye(n, dtype=int).astype(object)


def vec_mat(vector: Sequence[int], matrix: np.ndarray) -> Tuple[int, ...]:
    """行向量乘矩阵"""
    if len(vector) == 0:
        return ()
    result = np.array(list(vector), dtype=object) @ matrix
    return tuple(int(x) for x in result)


def mat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a @ b).astype(object)


def mat_pow(a: np.ndarray, k: int, inverse: Optional[np.ndarray] = None) -> np.ndarray:
    """
    矩阵幂（k 可为负，此时需给出整数逆矩阵）

    Raises:
        ValueError: k < 0 且没有 inverse
    """
    if k < 0:
        if inverse is None:
            raise ValueError("负指数需要逆矩阵")
        return mat_pow(inverse, -k)
    result = identity_matrix(a.shape[0])
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        k >>= 1
    return result


def determinant(a: np.ndarray) -> int:
    if a.shape[0] == 0:
        return 1
    return int(Matrix(a.tolist()).det())


def integer_inverse(a: np.ndarray) -> Optional[np.ndarray]:
    """整数逆矩阵；当 det ≠ ±1 时返回 None"""
    if a.shape[0] == 0:
        return a.copy()
    if abs(determinant(a)) != 1:
        return None
    inv = Matrix(a.tolist()).inv()
    return as_matrix([[int(inv[i, j]) for j in range(inv.cols)] for i in range(inv.rows)])


def mod_matrix(a: np.ndarray, m: int) -> np.ndarray:
    return np.vectorize(lambda x: int(x) % m, otypes=[object])(a) if a.size else a.copy()


def mod_vector(v: Sequence[int], m: int) -> Tuple[int, ...]:
    return tuple(int(x) % m for x in v)


def is_identity_mod(a: np.ndarray, m: int) -> bool:
    n = a.shape[0]
    return all((int(a[i, j]) - (1 if i == j else 0)) % m == 0 for i in range(n) for j in range(n))

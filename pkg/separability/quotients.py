"""
Z^n ⋊_A Z 的有限商

两类商：
- 同余商 (m, d)：(Z/m)^n ⋊_{A mod m} Z/d，要求 A^d ≡ I (mod m)
- 通用回退：到对称群 S_k 的同态，由满足关系的生成元像 (T, E_1, ..., E_n) 给出

元素统一为可哈希值，由 QuotientFactor 提供乘法、求逆和像。
"""

import itertools
import logging
from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterator, List, Optional, Tuple

from sympy.combinatorics import Permutation

from group_kernel import integer_matrix as im
from group_kernel.cache_service import FINITE_QUOTIENTS, get_computation_cache
from group_kernel.errors import ErrorMessages, GroupInputError
from group_kernel.kernel import morphism_matrix
from group_kernel.structures import Element, GroupFamily, GroupHandle
from solvers.config import Budget

logger = logging.getLogger(__name__)

QElement = Hashable


@dataclass(frozen=True)
class FiniteQuotientSpec:
    """
    有限商的描述

    - 同余商：modulus = m ≥ 2，period = d（A mod m 的阶的倍数）
    - 通用商：permutations = (T, E_1, ..., E_n) 的 array_form
    """

    modulus: Optional[int] = None
    period: Optional[int] = None
    permutations: Optional[Tuple[Tuple[int, ...], ...]] = None

    @property
    def is_congruence(self) -> bool:
        return self.modulus is not None

    @property
    def degree(self) -> int:
        return len(self.permutations[0]) if self.permutations else 0

    def nominal_size(self, rank: int) -> int:
        """商群的名义大小（同余商为 m^n·d；通用商为 k!）"""
        if self.is_congruence:
            return self.modulus ** rank * self.period
        size = 1
        for i in range(2, self.degree + 1):
            size *= i
        return size

    @property
    def label(self) -> str:
        if self.is_congruence:
            return f"congruence(m={self.modulus}, d={self.period})"
        return f"symmetric(k={self.degree})"


def check_polycyclic(G: GroupHandle) -> int:
    """
    检查 G = Z^n ⋊_A Z

    Returns:
        n

    Raises:
        GroupInputError: 群族不符
    """
    if G.family != GroupFamily.SEMIDIRECT or G.base.family != GroupFamily.ABELIAN:
        raise GroupInputError(ErrorMessages.FAMILY_UNSUPPORTED.format(family=G.family, operation="separability"))
    return G.base.rank


# ==================== 商群因子 ====================


class QuotientFactor:
    """
    一个有限商 φ: G → F 的具体运算

    元素：同余商为 (r mod d, 向量 mod m)；通用商为 sympy Permutation。
    """

    def __init__(self, G: GroupHandle, spec: FiniteQuotientSpec):
        self.group = G
        self.spec = spec
        self.rank = check_polycyclic(G)
        A = morphism_matrix(G.phi)
        if spec.is_congruence:
            m, d = spec.modulus, spec.period
            if m < 2 or d < 1:
                raise GroupInputError(f"同余商参数非法: m={m}, d={d}")
            self._powers = [im.mod_matrix(im.mat_pow(A, k), m) for k in range(d)]
            if not im.is_identity_mod(im.mat_mul(self._powers[-1], A), m):
                raise GroupInputError(f"A^{d} 模 {m} 不是单位阵")
        else:
            if not spec.permutations or len(spec.permutations) != self.rank + 1:
                raise GroupInputError("通用商需要 n+1 个置换像")
            self._t = Permutation(list(spec.permutations[0]))
            self._e = [Permutation(list(p)) for p in spec.permutations[1:]]
            if not relations_hold(self._t, self._e, A):
                raise GroupInputError(ErrorMessages.NOT_HOMOMORPHISM.format(reason="置换像不满足 Z^n ⋊ Z 的关系"))

    @property
    def identity(self) -> QElement:
        if self.spec.is_congruence:
            return (0, (0,) * self.rank)
        return Permutation(list(range(self.spec.degree)))

    def mul(self, x: QElement, y: QElement) -> QElement:
        if self.spec.is_congruence:
            m, d = self.spec.modulus, self.spec.period
            a, g = x
            b, h = y
            moved = im.vec_mat(g, self._powers[b])
            return ((a + b) % d, tuple((p + q) % m for p, q in zip(moved, h)))
        return x * y

    def inv(self, x: QElement) -> QElement:
        if self.spec.is_congruence:
            m, d = self.spec.modulus, self.spec.period
            a, g = x
            back = (d - a) % d
            moved = im.vec_mat(g, self._powers[back])
            return (back, tuple((-p) % m for p in moved))
        return ~x

    def image(self, g: Element) -> QElement:
        """G 的元素 t^r v 的像"""
        r, v = g.payload
        if self.spec.is_congruence:
            return (r % self.spec.period, im.mod_vector(v.payload, self.spec.modulus))
        result = self._t ** r
        for e, c in zip(self._e, v.payload):
            if c:
                result = result * (e ** c)
        return result

    def generator_images(self) -> List[QElement]:
        """t, e_1, ..., e_n 的像"""
        if self.spec.is_congruence:
            zero = (0,) * self.rank
            units = [tuple(1 % self.spec.modulus if j == i else 0 for j in range(self.rank)) for i in range(self.rank)]
            return [(1 % self.spec.period, zero)] + [(0, u) for u in units]
        return [self._t] + list(self._e)

    def elements(self) -> Tuple[QElement, ...]:
        """像群 Gφ 的全部元素（生成元闭包，带缓存）"""
        key = (self.spec, tuple(tuple(int(x) for x in row) for row in morphism_matrix(self.group.phi)))
        return get_computation_cache().get_or_compute(FINITE_QUOTIENTS, key, self._closure)

    def _closure(self) -> Tuple[QElement, ...]:
        gens = self.generator_images()
        gens = gens + [self.inv(g) for g in gens]
        start = self.identity
        seen = {start}
        order = [start]
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    queue.append(y)
        logger.debug("商群 %s 的像共 %d 个元素", self.spec.label, len(order))
        return tuple(order)

    def conjugacy_class(self, x: QElement) -> frozenset:
        """x 在像群中的共轭类"""
        return frozenset(self.mul(self.mul(self.inv(y), x), y) for y in self.elements())


def relations_hold(T: Permutation, E: List[Permutation], A) -> bool:
    """E_i 两两交换且 T^{-1} E_i T = Π_j E_j^{A_ij}"""
    for a, b in itertools.combinations(E, 2):
        if a * b != b * a:
            return False
    for i, e in enumerate(E):
        rhs = Permutation(list(range(T.size)))
        for j, f in enumerate(E):
            if A[i, j]:
                rhs = rhs * (f ** int(A[i, j]))
        if ~T * e * T != rhs:
            return False
    return True


# ==================== 商群流 ====================


def multiplicative_order(A, m: int, limit: int) -> Optional[int]:
    """A mod m 的阶；超过 limit 返回 None"""
    A_mod = im.mod_matrix(A, m)
    current = A_mod
    for k in range(1, limit + 1):
        if im.is_identity_mod(current, m):
            return k
        current = im.mod_matrix(im.mat_mul(current, A_mod), m)
    return None


def congruence_specs(G: GroupHandle, max_size: int, multiples: int = 3) -> List[FiniteQuotientSpec]:
    """全部规模 ≤ max_size 的同余商，按 (m^n·d, m, d) 升序"""
    n = check_polycyclic(G)
    A = morphism_matrix(G.phi)
    specs = []
    m = 2
    while m ** max(n, 1) <= max_size:
        room = max_size // (m ** n)
        d0 = multiplicative_order(A, m, room)
        if d0 is not None:
            for j in range(1, multiples + 1):
                if d0 * j <= room:
                    specs.append(FiniteQuotientSpec(modulus=m, period=d0 * j))
        if n == 0:
            break
        m += 1
    specs.sort(key=lambda s: (s.nominal_size(n), s.modulus, s.period))
    return specs


def generic_specs(G: GroupHandle, max_degree: int) -> Iterator[FiniteQuotientSpec]:
    """到 S_k（2 ≤ k ≤ max_degree）的非平凡同态，按 k 与字典序"""
    n = check_polycyclic(G)
    A = morphism_matrix(G.phi)
    for k in range(2, max_degree + 1):
        perms = sorted((Permutation(list(p)) for p in itertools.permutations(range(k))), key=lambda p: p.array_form)
        trivial = perms[0]
        for choice in itertools.product(perms, repeat=n + 1):
            if all(p == trivial for p in choice):
                continue
            T, E = choice[0], list(choice[1:])
            if relations_hold(T, E, A):
                yield FiniteQuotientSpec(permutations=tuple(tuple(p.array_form) for p in choice))


def enumerate_quotients(G: GroupHandle, budget: Budget) -> Iterator[FiniteQuotientSpec]:
    """
    有限商流：先同余商（规模升序），开启回退时再接通用商

    Raises:
        GroupInputError: G 不是 Z^n ⋊_A Z，或 A 不可逆
    """
    check_polycyclic(G)
    if not G.phi.invertible:
        raise GroupInputError(ErrorMessages.INVERSE_REQUIRED.format(operation="enumerate_quotients"))
    yield from congruence_specs(G, budget.max_quotient_size)
    if budget.generic_quotient_fallback:
        logger.info("同余商已用尽，启用通用商回退（k ≤ %d）", budget.generic_max_degree)
        yield from generic_specs(G, budget.generic_max_degree)

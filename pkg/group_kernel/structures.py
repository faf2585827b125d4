"""
群内核数据结构。

约定：
1. 全部采用右作用记号 gφ，复合 φψ 表示先 φ 后 ψ；与常见线性代数记号（左乘列向量）相反，
   交换群上的矩阵作用在行向量上：v ↦ vA。
2. 所有值构造后不可变，可在并发 worker 之间共享。
3. GroupHandle 按对象身份比较（同一个群只构造一次，元素通过句柄引用）。
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional, Tuple


class GroupFamily(str, Enum):
    """支持的群族"""

    FREE = "free"
    ABELIAN = "abelian"
    FINITE = "finite"
    SEMIDIRECT = "semidirect"
    VIRTUALLY_FREE = "virtually-free"


# 自由群字母：+i 表示第 i 个生成元（从 1 开始），-i 表示其逆
Word = Tuple[int, ...]


@dataclass(frozen=True, eq=False)
class GroupHandle:
    """
    具体群族的描述符

    按群族使用不同字段：
    - free: generator_names
    - abelian: rank（generator_names 为 e1..en 或自定义名）
    - finite: table / inverse_table / identity_index / finite_generators / element_words
    - semidirect: base + phi（经过验证的自同构，带逆像）
    - virtually-free: base（自由群 F）+ coset_names + action(u_ia) + products(v_ij, r_ij)
    """

    family: GroupFamily
    generator_names: Tuple[str, ...]
    name: Optional[str] = None
    rank: int = 0
    # finite
    table: Tuple[Tuple[int, ...], ...] = ()
    inverse_table: Tuple[int, ...] = ()
    identity_index: int = 0
    finite_generators: Tuple[int, ...] = ()
    element_words: Tuple[Word, ...] = ()
    element_names: Tuple[str, ...] = ()
    # semidirect / virtually-free
    base: Optional["GroupHandle"] = None
    phi: Optional["Morphism"] = None
    # virtually-free：陪集 0 恒为单位陪集
    coset_names: Tuple[str, ...] = ()
    action: Tuple[Tuple["Element", ...], ...] = ()
    products: Tuple[Tuple[Tuple["Element", int], ...], ...] = ()

    @property
    def order(self) -> Optional[int]:
        """有限群的阶，其余群族返回 None"""
        if self.family == GroupFamily.FINITE:
            return len(self.table)
        return None

    @property
    def coset_count(self) -> int:
        return len(self.coset_names)

    def __repr__(self) -> str:
        label = self.name or ",".join(self.generator_names)
        return f"GroupHandle({self.family.value}:{label})"


@dataclass(frozen=True)
class Element:
    """
    带群族标签的正规形

    payload 按群族：
    - free: 约化字（Word）
    - abelian: 长度为 n 的整数元组
    - finite: 乘法表下标
    - semidirect: (r, g) 表示唯一形式 t^r g
    - virtually-free: (w, i) 表示 w·b_i，w 为 F 中元素
    """

    group: GroupHandle
    payload: Any

    def __mul__(self, other: "Element") -> "Element":
        from group_kernel.kernel import mul

        return mul(self.group, self, other)

    def __invert__(self) -> "Element":
        from group_kernel.kernel import inv

        return inv(self.group, self)

    def __repr__(self) -> str:
        from group_kernel.notation import format_element

        return f"<{format_element(self)}>"


@dataclass(frozen=True)
class Morphism:
    """
    由生成元像给出的同态 domain → codomain

    - images[i] 为 generators(domain)[i] 的像
    - inverse_images 可选：逆自同构的生成元像
    - witness 可选：(r, x) 断言 φ^r = λ_x，其中 gλ_x = x^{-1} g x
    - element_map 仅对有限定义域缓存整张映射表
    """

    domain: GroupHandle
    codomain: GroupHandle
    images: Tuple[Element, ...]
    inverse_images: Optional[Tuple[Element, ...]] = None
    witness: Optional[Tuple[int, Element]] = None
    element_map: Optional[Tuple[int, ...]] = field(default=None, compare=False, repr=False)
    name: Optional[str] = field(default=None, compare=False)

    @property
    def invertible(self) -> bool:
        return self.inverse_images is not None

    @property
    def is_endomorphism(self) -> bool:
        return self.domain is self.codomain

"""
定义式求值

把见证代入问题种类的定义式，得到应当落入目标 K 的元素：
- GCP:   x^{-1} g x
- GTCP:  (z^{-1}φ) g z
- GBrP:  gφ^k
- GBrCP: v^{-1} (gφ^k) v
"""

from typing import Optional

from group_kernel.kernel import apply, apply_power, conjugate, identity, inv, mul
from group_kernel.structures import Element, Morphism
from reduction.instances import ProblemInstance, ProblemKind


def twisted_conjugate(phi: Morphism, g: Element, z: Element) -> Element:
    """(z^{-1}φ) g z"""
    G = g.group
    return mul(G, mul(G, apply(phi, inv(G, z)), g), z)


def evaluate(
    inst: ProblemInstance,
    conjugator: Optional[Element] = None,
    exponent: Optional[int] = None,
) -> Element:
    """
    按定义式计算见证对应的元素

    Args:
        inst: 问题实例（任意种类，非广义种类按广义形式求值）
        conjugator: x / z / v，缺省为单位元
        exponent: k，缺省为 0
    """
    G = inst.group
    x = conjugator if conjugator is not None else identity(G)
    kind = inst.kind.base_kind
    g = inst.subject
    if kind == ProblemKind.GCP:
        return conjugate(g, x)
    if kind == ProblemKind.GTCP:
        return twisted_conjugate(inst.morphism, g, x)
    moved = apply_power(inst.morphism, g, exponent or 0)
    if kind == ProblemKind.GBRP:
        return moved
    return conjugate(moved, x)

"""
群内核运算

所有群族的乘法、求逆、态射作用与态射幂。
约定：右作用 gφ，compose(φ, ψ) 先 φ 后 ψ；半直积 t^{-1} a t = aφ，
因此 (t^a g)(t^b h) = t^{a+b} (gφ^b) h。
"""

import logging
from typing import Iterable, List, Optional, Sequence, Tuple

from group_kernel import integer_matrix as im
from group_kernel import words as fw
from group_kernel.cache_service import MORPHISM_POWERS, get_computation_cache
from group_kernel.errors import CapabilityError, ErrorMessages, GroupInputError
from group_kernel.structures import Element, GroupFamily, GroupHandle, Morphism

logger = logging.getLogger(__name__)


# ==================== 基本构件 ====================


def identity(G: GroupHandle) -> Element:
    """单位元"""
    if G.family == GroupFamily.FREE:
        return Element(G, ())
    if G.family == GroupFamily.ABELIAN:
        return Element(G, (0,) * G.rank)
    if G.family == GroupFamily.FINITE:
        return Element(G, G.identity_index)
    if G.family == GroupFamily.SEMIDIRECT:
        return Element(G, (0, identity(G.base)))
    if G.family == GroupFamily.VIRTUALLY_FREE:
        return Element(G, (identity(G.base), 0))
    raise GroupInputError(ErrorMessages.FAMILY_UNSUPPORTED.format(family=G.family, operation="identity"))


def generators(G: GroupHandle) -> Tuple[Element, ...]:
    """
    生成元（固定顺序）

    - semidirect: t 在最前，其后是基群生成元
    - virtually-free: 先 F 的生成元，再陪集字母 b_1..b_{m-1}
    """
    if G.family == GroupFamily.FREE:
        return tuple(Element(G, (i,)) for i in range(1, G.rank + 1))
    if G.family == GroupFamily.ABELIAN:
        return tuple(
            Element(G, tuple(1 if j == i else 0 for j in range(G.rank))) for i in range(G.rank)
        )
    if G.family == GroupFamily.FINITE:
        return tuple(Element(G, idx) for idx in G.finite_generators)
    if G.family == GroupFamily.SEMIDIRECT:
        t = Element(G, (1, identity(G.base)))
        return (t,) + tuple(Element(G, (0, g)) for g in generators(G.base))
    if G.family == GroupFamily.VIRTUALLY_FREE:
        e_base = identity(G.base)
        letters = tuple(Element(G, (a, 0)) for a in generators(G.base))
        cosets = tuple(Element(G, (e_base, i)) for i in range(1, G.coset_count))
        return letters + cosets
    raise GroupInputError(ErrorMessages.FAMILY_UNSUPPORTED.format(family=G.family, operation="generators"))


def is_identity(g: Element) -> bool:
    return g == identity(g.group)


def _check(G: GroupHandle, *elements: Element) -> None:
    for element in elements:
        if element.group is not G:
            raise GroupInputError(ErrorMessages.GROUP_MISMATCH.format(group=G))


# ==================== 乘法与求逆 ====================


def mul(G: GroupHandle, a: Element, b: Element) -> Element:
    """
    乘积的正规形

    Raises:
        GroupInputError: 元素不属于 G
        CapabilityError: 半直积中需要负幂但定义态射没有逆像
    """
    _check(G, a, b)
    family = G.family
    if family == GroupFamily.FREE:
        return Element(G, fw.concat(a.payload, b.payload))
    if family == GroupFamily.ABELIAN:
        return Element(G, tuple(x + y for x, y in zip(a.payload, b.payload)))
    if family == GroupFamily.FINITE:
        return Element(G, G.table[a.payload][b.payload])
    if family == GroupFamily.SEMIDIRECT:
        ra, ga = a.payload
        rb, hb = b.payload
        shifted = apply(morphism_power(G.phi, rb), ga) if rb else ga
        return Element(G, (ra + rb, mul(G.base, shifted, hb)))
    if family == GroupFamily.VIRTUALLY_FREE:
        w1, i = a.payload
        w2, j = b.payload
        moved = _coset_action(G, i, w2)
        v_ij, r_ij = G.products[i][j]
        F = G.base
        return Element(G, (mul(F, mul(F, w1, moved), v_ij), r_ij))
    raise GroupInputError(ErrorMessages.FAMILY_UNSUPPORTED.format(family=family, operation="mul"))


def inv(G: GroupHandle, a: Element) -> Element:
    """
    逆元

    Raises:
        CapabilityError: 半直积 t^r g（r > 0）的逆需要 φ^{-r}
    """
    _check(G, a)
    family = G.family
    if family == GroupFamily.FREE:
        return Element(G, fw.invert(a.payload))
    if family == GroupFamily.ABELIAN:
        return Element(G, tuple(-x for x in a.payload))
    if family == GroupFamily.FINITE:
        return Element(G, G.inverse_table[a.payload])
    if family == GroupFamily.SEMIDIRECT:
        r, g = a.payload
        g_inv = inv(G.base, g)
        if r > 0 and not G.phi.invertible:
            raise CapabilityError(
                ErrorMessages.INVERSE_REQUIRED.format(operation="半直积求逆"), missing="inverse_images"
            )
        return Element(G, (-r, apply(morphism_power(G.phi, -r), g_inv) if r else g_inv))
    if family == GroupFamily.VIRTUALLY_FREE:
        w, i = a.payload
        F = G.base
        w_inv = inv(F, w)
        if i == 0:
            return Element(G, (w_inv, 0))
        k = next(k for k in range(G.coset_count) if G.products[i][k][1] == 0)
        v_ik = G.products[i][k][0]
        return Element(G, (_coset_action(G, k, mul(F, inv(F, v_ik), w_inv)), k))
    raise GroupInputError(ErrorMessages.FAMILY_UNSUPPORTED.format(family=family, operation="inv"))


def _coset_action(G: GroupHandle, i: int, w: Element) -> Element:
    """b_i w = (w α_i) b_i，其中 α_i: a ↦ u_{ia}"""
    if i == 0:
        return w
    images = G.action[i]
    F = G.base
    result = identity(F)
    for letter in w.payload:
        image = images[abs(letter) - 1]
        result = mul(F, result, image if letter > 0 else inv(F, image))
    return result


def power(g: Element, n: int) -> Element:
    G = g.group
    if G.family == GroupFamily.FREE:
        return Element(G, fw.word_power(g.payload, n))
    if G.family == GroupFamily.ABELIAN:
        return Element(G, tuple(n * x for x in g.payload))
    base = g if n >= 0 else inv(G, g)
    n = abs(n)
    result = identity(G)
    while n:
        if n & 1:
            result = mul(G, result, base)
        base = mul(G, base, base)
        n >>= 1
    return result


def product(G: GroupHandle, elements: Iterable[Element]) -> Element:
    result = identity(G)
    for element in elements:
        result = mul(G, result, element)
    return result


def conjugate(g: Element, x: Element) -> Element:
    """x^{-1} g x"""
    G = g.group
    return mul(G, mul(G, inv(G, x), g), x)


def commutes(g: Element, h: Element) -> bool:
    G = g.group
    return mul(G, g, h) == mul(G, h, g)


# ==================== 生成元展开 ====================


def expand(g: Element) -> List[Tuple[int, int]]:
    """
    把元素写成生成元的幂积

    Returns:
        [(generator_position, exponent), ...]，位置对应 generators(G)
    """
    G = g.group
    family = G.family
    if family == GroupFamily.FREE:
        return [(abs(letter) - 1, 1 if letter > 0 else -1) for letter in g.payload]
    if family == GroupFamily.ABELIAN:
        return [(i, x) for i, x in enumerate(g.payload) if x]
    if family == GroupFamily.FINITE:
        return [(abs(letter) - 1, 1 if letter > 0 else -1) for letter in G.element_words[g.payload]]
    if family == GroupFamily.SEMIDIRECT:
        r, base_part = g.payload
        head = [(0, r)] if r else []
        return head + [(pos + 1, e) for pos, e in expand(base_part)]
    if family == GroupFamily.VIRTUALLY_FREE:
        w, i = g.payload
        tail = [(G.base.rank + i - 1, 1)] if i else []
        return expand(w) + tail
    raise GroupInputError(ErrorMessages.FAMILY_UNSUPPORTED.format(family=family, operation="expand"))


# ==================== 态射 ====================


def morphism_matrix(phi: Morphism):
    """交换群态射的矩阵（行 = 生成元像）"""
    return im.as_matrix([img.payload for img in phi.images])


def apply(phi: Morphism, g: Element) -> Element:
    """
    态射作用 gφ

    Raises:
        GroupInputError: g 不在 φ 的定义域
    """
    _check(phi.domain, g)
    H = phi.codomain
    if phi.element_map is not None:
        return Element(H, phi.element_map[g.payload])
    if phi.domain.family == GroupFamily.ABELIAN and H.family == GroupFamily.ABELIAN:
        if not phi.images:
            return identity(H)
        return Element(H, im.vec_mat(g.payload, morphism_matrix(phi)))
    if phi.domain.family == GroupFamily.FREE and H.family == GroupFamily.FREE:
        result: Tuple[int, ...] = ()
        inverted = {}
        for letter in g.payload:
            image = phi.images[abs(letter) - 1].payload
            if letter < 0:
                image = inverted.setdefault(letter, fw.invert(image))
            result = fw.concat(result, image)
        return Element(H, result)
    result_element = identity(H)
    for pos, exponent in expand(g):
        result_element = mul(H, result_element, power(phi.images[pos], exponent))
    return result_element


def identity_morphism(G: GroupHandle) -> Morphism:
    gens = generators(G)
    element_map = tuple(range(G.order)) if G.family == GroupFamily.FINITE else None
    return Morphism(domain=G, codomain=G, images=gens, inverse_images=gens, element_map=element_map, name="id")


def compose(phi: Morphism, psi: Morphism) -> Morphism:
    """先 φ 后 ψ（右作用：g(φψ) = (gφ)ψ）"""
    if phi.codomain is not psi.domain:
        raise GroupInputError(ErrorMessages.GROUP_MISMATCH.format(group=psi.domain))
    images = tuple(apply(psi, img) for img in phi.images)
    inverse_images = None
    if phi.invertible and psi.invertible:
        psi_inv = inverse_morphism(psi)
        phi_inv = inverse_morphism(phi)
        inverse_images = tuple(apply(phi_inv, img) for img in psi_inv.images)
    element_map = None
    if phi.element_map is not None and psi.element_map is not None:
        element_map = tuple(psi.element_map[x] for x in phi.element_map)
    return Morphism(
        domain=phi.domain,
        codomain=psi.codomain,
        images=images,
        inverse_images=inverse_images,
        element_map=element_map,
    )


def inverse_morphism(phi: Morphism) -> Morphism:
    """
    逆自同构

    Raises:
        CapabilityError: 没有逆像
    """
    if not phi.invertible:
        raise CapabilityError(ErrorMessages.INVERSE_REQUIRED.format(operation="求逆态射"), missing="inverse_images")
    element_map = None
    if phi.element_map is not None:
        inverse_map = [0] * len(phi.element_map)
        for source, target in enumerate(phi.element_map):
            inverse_map[target] = source
        element_map = tuple(inverse_map)
    witness = None
    if phi.witness is not None:
        # φ^r = λ_x  ⇒  φ^{-r} = λ_{x^{-1}}
        r, x = phi.witness
        witness = (r, inv(x.group, x))
    return Morphism(
        domain=phi.codomain,
        codomain=phi.domain,
        images=phi.inverse_images,
        inverse_images=phi.images,
        witness=witness,
        element_map=element_map,
    )


def inner_morphism(G: GroupHandle, x: Element) -> Morphism:
    """内自同构 λ_x: g ↦ x^{-1} g x，自带见证 (1, x)"""
    _check(G, x)
    x_inv = inv(G, x)
    gens = generators(G)
    images = tuple(conjugate(a, x) for a in gens)
    inverse_images = tuple(conjugate(a, x_inv) for a in gens)
    element_map = None
    if G.family == GroupFamily.FINITE:
        element_map = tuple(
            G.table[G.table[x_inv.payload][g]][x.payload] for g in range(len(G.table))
        )
    return Morphism(
        domain=G,
        codomain=G,
        images=images,
        inverse_images=inverse_images,
        witness=(1, x),
        element_map=element_map,
        name="inner",
    )


def morphism_power(phi: Morphism, k: int) -> Morphism:
    """
    态射幂 φ^k

    Args:
        phi: 自同态
        k: 指数（负数需要逆像）

    Returns:
        φ^k；k=0 为恒等，k=1 返回 φ 本身

    Raises:
        CapabilityError: k < 0 且 φ 没有逆像
    """
    if not phi.is_endomorphism:
        raise GroupInputError(ErrorMessages.FAMILY_UNSUPPORTED.format(family="non-endomorphism", operation="power"))
    if k == 1:
        return phi
    if k == 0:
        return identity_morphism(phi.domain)
    if k < 0:
        if not phi.invertible:
            raise CapabilityError(
                ErrorMessages.INVERSE_REQUIRED.format(operation=f"负幂 φ^{k}"), missing="inverse_images"
            )
        return morphism_power(inverse_morphism(phi), -k)
    return get_computation_cache().get_or_compute(MORPHISM_POWERS, (phi, k), lambda: _power_by_squaring(phi, k))


def _power_by_squaring(phi: Morphism, k: int) -> Morphism:
    logger.debug("计算态射幂 k=%d", k)
    half = morphism_power(phi, k // 2)
    result = compose(half, half)
    if k % 2:
        result = compose(result, phi)
    return result


def apply_power(phi: Morphism, g: Element, k: int) -> Element:
    """g φ^k；小的正指数直接迭代，避免构造态射幂"""
    if 0 <= k <= 8:
        for _ in range(k):
            g = apply(phi, g)
        return g
    return apply(morphism_power(phi, k), g)


def fixes_generators(phi: Morphism) -> bool:
    return all(apply(phi, a) == a for a in generators(phi.domain))


def verify_automorphism(phi: Morphism, phi_inv: Morphism) -> bool:
    """
    验证 φ 与 φ_inv 互逆（两种复合都固定每个生成元）

    Returns:
        是否互逆；定义域不匹配时返回 False
    """
    if phi.domain is not phi_inv.codomain or phi.codomain is not phi_inv.domain:
        return False
    forward = all(apply(phi_inv, apply(phi, a)) == a for a in generators(phi.domain))
    backward = all(apply(phi, apply(phi_inv, a)) == a for a in generators(phi.codomain))
    return forward and backward


def verify_witness(phi: Morphism) -> bool:
    """检查虚内见证 φ^r = λ_x（对每个生成元展开 r 次作用）"""
    if phi.witness is None:
        return False
    r, x = phi.witness
    if r <= 0:
        return False
    for a in generators(phi.domain):
        if apply_power(phi, a, r) != conjugate(a, x):
            return False
    return True


def cyclically_reduce(u: Element) -> Tuple[Element, Element]:
    """
    自由群元素的循环约化

    Returns:
        (core, conjugator)，u = conjugator^{-1} · core · conjugator
    """
    if u.group.family != GroupFamily.FREE:
        raise GroupInputError(ErrorMessages.FAMILY_UNSUPPORTED.format(family=u.group.family, operation="cyclically_reduce"))
    core, conjugator = fw.cyclic_reduce_word(u.payload)
    return Element(u.group, core), Element(u.group, conjugator)


# ==================== 排序 ====================


def element_key(g: Element):
    """确定性排序键（短字优先）"""
    family = g.group.family
    if family == GroupFamily.FREE:
        return (len(g.payload), tuple(fw.letter_order_key(x) for x in g.payload))
    if family == GroupFamily.ABELIAN:
        return (sum(abs(x) for x in g.payload), tuple((abs(x), x < 0) for x in g.payload))
    if family == GroupFamily.FINITE:
        return (g.payload,)
    if family == GroupFamily.SEMIDIRECT:
        r, base = g.payload
        return (abs(r), r < 0, element_key(base))
    w, i = g.payload
    return (i, element_key(w))


def sort_elements(elements: Iterable[Element]) -> Tuple[Element, ...]:
    return tuple(sorted(set(elements), key=element_key))


def same_group(elements: Sequence[Element]) -> Optional[GroupHandle]:
    groups = {id(e.group) for e in elements}
    if len(groups) > 1:
        raise GroupInputError(ErrorMessages.GROUP_MISMATCH.format(group=elements[0].group))
    return elements[0].group if elements else None

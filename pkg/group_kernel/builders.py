"""
群与态射的构造器

所有构造器在返回前检查不变量，失败时抛出 GroupInputError。
"""

import itertools
import logging
from collections import deque
from typing import List, Mapping, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation

from group_kernel import integer_matrix as im
from group_kernel.errors import ErrorMessages, GroupInputError
from group_kernel.kernel import (
    apply,
    conjugate,
    generators,
    identity,
    inv,
    mul,
    inverse_morphism,
    verify_automorphism,
    verify_witness,
)
from group_kernel.structures import Element, GroupFamily, GroupHandle, Morphism

logger = logging.getLogger(__name__)


# ==================== 群 ====================


def free_group(names: Sequence[str], name: Optional[str] = None) -> GroupHandle:
    """秩为 len(names) 的自由群"""
    names = tuple(names)
    if len(set(names)) != len(names):
        raise GroupInputError(f"生成元名重复: {names}")
    return GroupHandle(family=GroupFamily.FREE, generator_names=names, name=name, rank=len(names))


def abelian_group(rank: int, names: Optional[Sequence[str]] = None, name: Optional[str] = None) -> GroupHandle:
    """自由交换群 Z^rank"""
    if rank < 0:
        raise GroupInputError(f"秩必须非负: {rank}")
    names = tuple(names) if names else tuple(f"e{i + 1}" for i in range(rank))
    if len(names) != rank:
        raise GroupInputError(f"生成元名数量 {len(names)} 与秩 {rank} 不一致")
    return GroupHandle(family=GroupFamily.ABELIAN, generator_names=names, name=name, rank=rank)


def finite_group(
    table: Sequence[Sequence[int]],
    generator_indices: Optional[Sequence[int]] = None,
    names: Optional[Sequence[str]] = None,
    name: Optional[str] = None,
    element_names: Optional[Sequence[str]] = None,
) -> GroupHandle:
    """
    由乘法表给出的有限群

    Args:
        table: table[i][j] = i·j 的下标
        generator_indices: 生成元下标（缺省时贪心选取）
        names: 生成元名
        element_names: 元素显示名（可选）

    Raises:
        GroupInputError: 不是群表或生成元不能生成全群
    """
    table = tuple(tuple(int(x) for x in row) for row in table)
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise GroupInputError(ErrorMessages.NOT_GROUP_TABLE.format(reason="表必须是非空方阵"))
    if any(not 0 <= x < n for row in table for x in row):
        raise GroupInputError(ErrorMessages.NOT_GROUP_TABLE.format(reason="下标越界"))

    identities = [e for e in range(n) if all(table[e][x] == x and table[x][e] == x for x in range(n))]
    if not identities:
        raise GroupInputError(ErrorMessages.NOT_GROUP_TABLE.format(reason="没有单位元"))
    e = identities[0]

    inverse_table = []
    for x in range(n):
        candidates = [y for y in range(n) if table[x][y] == e and table[y][x] == e]
        if not candidates:
            raise GroupInputError(ErrorMessages.NOT_GROUP_TABLE.format(reason=f"元素 {x} 没有逆"))
        inverse_table.append(candidates[0])

    for x, y, z in itertools.product(range(n), repeat=3):
        if table[table[x][y]][z] != table[x][table[y][z]]:
            raise GroupInputError(ErrorMessages.NOT_GROUP_TABLE.format(reason=f"({x},{y},{z}) 不满足结合律"))

    if generator_indices is None:
        generator_indices = _greedy_generators(table, e)
    generator_indices = tuple(int(g) for g in generator_indices)
    words = _cayley_words(table, inverse_table, e, generator_indices)
    if any(w is None for w in words):
        raise GroupInputError(ErrorMessages.NOT_GROUP_TABLE.format(reason="给定生成元不能生成全群"))

    names = tuple(names) if names else tuple(f"g{i + 1}" for i in range(len(generator_indices)))
    if len(names) != len(generator_indices):
        raise GroupInputError(f"生成元名数量 {len(names)} 与生成元数量不一致")

    return GroupHandle(
        family=GroupFamily.FINITE,
        generator_names=names,
        name=name,
        rank=len(generator_indices),
        table=table,
        inverse_table=tuple(inverse_table),
        identity_index=e,
        finite_generators=generator_indices,
        element_words=tuple(words),
        element_names=tuple(element_names) if element_names else (),
    )


def _closure(table, e: int, gens: Sequence[int]) -> set:
    reached = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = table[x][g]
            if y not in reached:
                reached.add(y)
                queue.append(y)
    return reached


def _greedy_generators(table, e: int) -> Tuple[int, ...]:
    gens: List[int] = []
    reached = {e}
    for x in range(len(table)):
        if x not in reached:
            gens.append(x)
            reached = _closure(table, e, gens)
    return tuple(gens)


def _cayley_words(table, inverse_table, e: int, gens: Sequence[int]) -> List[Optional[Tuple[int, ...]]]:
    """BFS 给出每个元素的最短生成元字（字母 ±(pos+1)）"""
    words: List[Optional[Tuple[int, ...]]] = [None] * len(table)
    words[e] = ()
    queue = deque([e])
    steps = []
    for pos, g in enumerate(gens):
        steps.append((pos + 1, g))
        steps.append((-(pos + 1), inverse_table[g]))
    while queue:
        x = queue.popleft()
        for letter, g in steps:
            y = table[x][g]
            if words[y] is None:
                words[y] = words[x] + (letter,)
                queue.append(y)
    return words


def cyclic_group(n: int, generator: str = "a", name: Optional[str] = None) -> GroupHandle:
    """Z/n（元素下标 k 表示 a^k）"""
    if n < 1:
        raise GroupInputError(f"阶必须为正: {n}")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    gens = (1,) if n > 1 else ()
    names = (generator,) if n > 1 else ()
    return finite_group(table, gens, names, name=name or f"Z/{n}")


def symmetric_group(k: int, name: Optional[str] = None) -> GroupHandle:
    """
    对称群 S_k（sympy 置换，右作用：p*q 先 p 后 q）

    生成元为对换 (0 1) 与 k-循环。
    """
    perms = [Permutation(list(p)) for p in itertools.permutations(range(k))]
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[p * q] for q in perms] for p in perms]
    if k < 2:
        return finite_group(table, (), (), name=name or f"S{k}")
    transposition = Permutation([1, 0] + list(range(2, k)))
    cycle = Permutation(list(range(1, k)) + [0])
    gens = (index[transposition],) if k == 2 else (index[transposition], index[cycle])
    names = ("s",) if k == 2 else ("s", "c")
    return finite_group(table, gens, names, name=name or f"S{k}")


def direct_product_table(orders: Sequence[int], tables: Sequence[Sequence[Sequence[int]]]) -> List[List[int]]:
    """有限群直积的乘法表（混合进制编号）"""
    elements = list(itertools.product(*[range(n) for n in orders]))
    index = {x: i for i, x in enumerate(elements)}
    return [
        [index[tuple(t[a][b] for t, a, b in zip(tables, x, y))] for y in elements]
        for x in elements
    ]


def semidirect_product(
    base: GroupHandle,
    phi: Morphism,
    t_name: str = "t",
    name: Optional[str] = None,
    require_inverse: bool = True,
) -> GroupHandle:
    """
    G ⋊_φ Z，关系 t^{-1} a t = aφ

    Args:
        base: 基群 G
        phi: G 的自同构（默认要求带逆像并通过验证）
        require_inverse: 为 False 时允许只给自同态，此时 t^r g (r>0) 的求逆会抛 CapabilityError

    Raises:
        GroupInputError: φ 不是 G 的自同态或逆像验证失败
    """
    if phi.domain is not base or phi.codomain is not base:
        raise GroupInputError(ErrorMessages.GROUP_MISMATCH.format(group=base))
    if phi.invertible:
        if not verify_automorphism(phi, inverse_morphism(phi)):
            raise GroupInputError(ErrorMessages.NOT_AUTOMORPHISM.format(reason="半直积定义态射"))
    elif require_inverse:
        raise GroupInputError(ErrorMessages.INVERSE_REQUIRED.format(operation="半直积"))
    if t_name in base.generator_names:
        raise GroupInputError(f"生成元名 {t_name} 与基群冲突")
    names = (t_name,) + base.generator_names
    return GroupHandle(
        family=GroupFamily.SEMIDIRECT,
        generator_names=names,
        name=name,
        rank=len(names),
        base=base,
        phi=phi,
    )


def virtually_free_group(
    base: GroupHandle,
    coset_names: Sequence[str],
    action: Mapping[int, Sequence[Element]],
    products: Mapping[Tuple[int, int], Tuple[Element, int]],
    name: Optional[str] = None,
) -> GroupHandle:
    """
    虚自由群 G = F b_0 ∪ F b_1 ∪ ... ∪ F b_{m-1}（b_0 = 1）

    Args:
        base: 自由群 F
        coset_names: 陪集字母名，第 0 个为单位陪集（如 "1"）
        action: {i: (u_{i,1}, ..., u_{i,rank})}，关系 b_i a = u_{ia} b_i（缺省为 a）
        products: {(i, j): (v_ij, r_ij)}，关系 b_i b_j = v_ij b_{r_ij}（i, j ≥ 1）

    Raises:
        GroupInputError: 关系数据不一致（陪集表不是群表、乘法不结合等）
    """
    if base.family != GroupFamily.FREE:
        raise GroupInputError(ErrorMessages.BAD_PRESENTATION.format(reason="F 必须是自由群"))
    m = len(coset_names)
    if m < 1:
        raise GroupInputError(ErrorMessages.BAD_PRESENTATION.format(reason="至少需要单位陪集"))
    e = identity(base)
    gens = generators(base)

    action_rows = [gens]
    for i in range(1, m):
        row = tuple(action.get(i, gens))
        if len(row) != base.rank or any(x.group is not base for x in row):
            raise GroupInputError(ErrorMessages.BAD_PRESENTATION.format(reason=f"b_{i} 的作用数据不完整"))
        action_rows.append(row)

    product_rows = []
    for i in range(m):
        row = []
        for j in range(m):
            if i == 0:
                row.append((e, j))
            elif j == 0:
                row.append((e, i))
            else:
                if (i, j) not in products:
                    raise GroupInputError(ErrorMessages.BAD_PRESENTATION.format(reason=f"缺少 b_{i} b_{j}"))
                v, r = products[(i, j)]
                if v.group is not base or not 0 <= r < m:
                    raise GroupInputError(ErrorMessages.BAD_PRESENTATION.format(reason=f"b_{i} b_{j} 数据非法"))
                row.append((v, int(r)))
        product_rows.append(tuple(row))

    coset_table = [[product_rows[i][j][1] for j in range(m)] for i in range(m)]
    try:
        finite_group(coset_table)
    except GroupInputError as exc:
        raise GroupInputError(ErrorMessages.BAD_PRESENTATION.format(reason=f"陪集表: {exc}")) from exc

    G = GroupHandle(
        family=GroupFamily.VIRTUALLY_FREE,
        generator_names=base.generator_names + tuple(coset_names[1:]),
        name=name,
        rank=base.rank + m - 1,
        base=base,
        coset_names=tuple(coset_names),
        action=tuple(action_rows),
        products=tuple(product_rows),
    )

    letters = list(generators(G))
    letters += [inv(G, x) for x in letters]
    for x, y, z in itertools.product(letters, repeat=3):
        if mul(G, mul(G, x, y), z) != mul(G, x, mul(G, y, z)):
            raise GroupInputError(ErrorMessages.BAD_PRESENTATION.format(reason=f"乘法在 ({x}, {y}, {z}) 不结合"))
    ident = identity(G)
    for x in letters:
        if mul(G, x, inv(G, x)) != ident:
            raise GroupInputError(ErrorMessages.BAD_PRESENTATION.format(reason=f"{x} 的逆不一致"))
    logger.debug("虚自由群构造完成: rank(F)=%d, 陪集数=%d", base.rank, m)
    return G


def free_times_finite(base: GroupHandle, finite: GroupHandle, name: Optional[str] = None) -> GroupHandle:
    """F × Q（Q 有限）：陪集字母为 Q 的元素，作用平凡"""
    e = identity(base)
    order = finite.order
    # 单位元排在陪集 0
    ordering = [finite.identity_index] + [x for x in range(order) if x != finite.identity_index]
    position = {x: i for i, x in enumerate(ordering)}
    names = ["1"] + [_finite_element_label(finite, x) for x in ordering[1:]]
    products = {
        (i, j): (e, position[finite.table[ordering[i]][ordering[j]]])
        for i in range(1, order)
        for j in range(1, order)
    }
    return virtually_free_group(base, names, {}, products, name=name)


def _finite_element_label(G: GroupHandle, index: int) -> str:
    if G.element_names:
        return G.element_names[index]
    word = G.element_words[index]
    if len(word) == 1 and word[0] > 0:
        return G.generator_names[word[0] - 1]
    return f"q{index}"


# ==================== 态射 ====================


def make_morphism(
    domain: GroupHandle,
    codomain: GroupHandle,
    images: Sequence[Element],
    inverse_images: Optional[Sequence[Element]] = None,
    witness: Optional[Tuple[int, Element]] = None,
    name: Optional[str] = None,
) -> Morphism:
    """
    由生成元像构造态射并检查

    - 有限定义域：沿 Cayley 图扩展，检查同态性，缓存整张映射表
    - 半直积 / 虚自由定义域：检查表示中的关系
    - 给出逆像时检查两种复合都固定生成元
    - 给出见证 (r, x) 时检查 φ^r = λ_x

    Raises:
        GroupInputError: 任一检查失败
    """
    images = tuple(images)
    expected = len(generators(domain))
    if len(images) != expected:
        raise GroupInputError(
            ErrorMessages.NOT_HOMOMORPHISM.format(reason=f"需要 {expected} 个生成元像，实际 {len(images)}")
        )
    if any(img.group is not codomain for img in images):
        raise GroupInputError(ErrorMessages.NOT_HOMOMORPHISM.format(reason="像不属于陪域"))

    element_map = None
    if domain.family == GroupFamily.FINITE:
        element_map = _extend_finite(domain, codomain, images)
    phi = Morphism(domain=domain, codomain=codomain, images=images, element_map=element_map, name=name)
    _check_relations(phi)

    if inverse_images is not None:
        inverse_images = tuple(inverse_images)
        if len(inverse_images) != len(generators(codomain)) or any(x.group is not domain for x in inverse_images):
            raise GroupInputError(ErrorMessages.NOT_AUTOMORPHISM.format(reason="逆像数量或所属群不符"))
        inverse_map = _extend_finite(codomain, domain, inverse_images) if codomain.family == GroupFamily.FINITE else None
        phi_inv = Morphism(domain=codomain, codomain=domain, images=inverse_images, element_map=inverse_map)
        if not verify_automorphism(phi, phi_inv):
            raise GroupInputError(ErrorMessages.NOT_AUTOMORPHISM.format(reason="复合不是恒等"))
        phi = Morphism(
            domain=domain,
            codomain=codomain,
            images=images,
            inverse_images=inverse_images,
            element_map=element_map,
            name=name,
        )

    if witness is not None:
        r, x = witness
        if x.group is not domain:
            raise GroupInputError(ErrorMessages.BAD_WITNESS.format(r=r, reason="x 不属于定义域"))
        phi = Morphism(
            domain=domain,
            codomain=codomain,
            images=images,
            inverse_images=phi.inverse_images,
            witness=(int(r), x),
            element_map=element_map,
            name=name,
        )
        if domain is not codomain or not verify_witness(phi):
            raise GroupInputError(ErrorMessages.BAD_WITNESS.format(r=r, reason="φ^r ≠ λ_x"))
    return phi


def _extend_finite(domain: GroupHandle, codomain: GroupHandle, images: Sequence[Element]) -> Optional[Tuple[int, ...]]:
    """沿 Cayley 图扩展生成元像；任何边不一致即不是同态"""
    n = domain.order
    values: List[Optional[Element]] = [None] * n
    values[domain.identity_index] = identity(codomain)
    queue = deque([domain.identity_index])
    while queue:
        x = queue.popleft()
        for pos, g in enumerate(domain.finite_generators):
            y = domain.table[x][g]
            value = mul(codomain, values[x], images[pos])
            if values[y] is None:
                values[y] = value
                queue.append(y)
            elif values[y] != value:
                raise GroupInputError(ErrorMessages.NOT_HOMOMORPHISM.format(reason=f"元素 {y} 的像不唯一"))
    if codomain.family != GroupFamily.FINITE:
        return None
    return tuple(v.payload for v in values)


def _check_relations(phi: Morphism) -> None:
    domain = phi.domain
    if domain.family == GroupFamily.SEMIDIRECT:
        t_image = phi.images[0]
        for pos, a in enumerate(generators(domain)[1:], start=1):
            lhs = conjugate(phi.images[pos], t_image)
            rhs = apply(phi, Element(domain, (0, apply(domain.phi, a.payload[1]))))
            if lhs != rhs:
                raise GroupInputError(ErrorMessages.NOT_HOMOMORPHISM.format(reason=f"关系 t^-1 {a} t 不保持"))
    elif domain.family == GroupFamily.VIRTUALLY_FREE:
        # b_i a = u_{ia} b_i 与 b_i b_j = v_ij b_{r_ij} 恰是生成元两两乘积的正规形
        gens = generators(domain)
        for x, y in itertools.product(gens, repeat=2):
            if apply(phi, mul(domain, x, y)) != mul(phi.codomain, apply(phi, x), apply(phi, y)):
                raise GroupInputError(ErrorMessages.NOT_HOMOMORPHISM.format(reason=f"关系 {x}·{y} 不保持"))


def matrix_morphism(
    G: GroupHandle,
    rows: Sequence[Sequence[int]],
    inverse_rows: Optional[Sequence[Sequence[int]]] = None,
    auto_inverse: bool = True,
    name: Optional[str] = None,
) -> Morphism:
    """
    Z^n 上由整数矩阵给出的自同态（行 i = e_i 的像）

    Args:
        inverse_rows: 显式逆矩阵
        auto_inverse: 未给出逆矩阵时，若 det = ±1 自动用 sympy 求整数逆

    Raises:
        GroupInputError: 形状不符或给定逆矩阵不正确
    """
    if G.family != GroupFamily.ABELIAN:
        raise GroupInputError(ErrorMessages.FAMILY_UNSUPPORTED.format(family=G.family, operation="matrix_morphism"))
    matrix = im.as_matrix(rows) if rows else im.as_matrix([])
    if G.rank and matrix.shape != (G.rank, G.rank):
        raise GroupInputError(f"矩阵形状 {matrix.shape} 与秩 {G.rank} 不符")
    images = [Element(G, tuple(int(x) for x in row)) for row in matrix] if G.rank else []
    inverse_images = None
    if inverse_rows is not None:
        inverse_images = [Element(G, tuple(int(x) for x in row)) for row in im.as_matrix(inverse_rows)]
    elif auto_inverse:
        inverse = im.integer_inverse(matrix)
        if inverse is not None:
            inverse_images = [Element(G, tuple(int(x) for x in row)) for row in inverse] if G.rank else []
    return make_morphism(G, G, images, inverse_images, name=name)


def finite_automorphisms(G: GroupHandle) -> List[Morphism]:
    """
    穷举有限群的全部自同构（按生成元像搜索）

    Returns:
        带逆像与映射表的自同构列表，恒等排在最前
    """
    if G.family != GroupFamily.FINITE:
        raise GroupInputError(ErrorMessages.FAMILY_UNSUPPORTED.format(family=G.family, operation="finite_automorphisms"))
    n = G.order
    result: List[Morphism] = []
    gens = G.finite_generators
    for choice in itertools.product(range(n), repeat=len(gens)):
        images = tuple(Element(G, x) for x in choice)
        try:
            element_map = _extend_finite(G, G, images)
        except GroupInputError:
            continue
        if len(set(element_map)) != n:
            continue
        inverse_map = [0] * n
        for source, target in enumerate(element_map):
            inverse_map[target] = source
        inverse_images = tuple(Element(G, inverse_map[g]) for g in gens)
        result.append(
            Morphism(
                domain=G,
                codomain=G,
                images=images,
                inverse_images=inverse_images,
                element_map=element_map,
            )
        )
    result.sort(key=lambda phi: (phi.element_map != tuple(range(n)), phi.element_map))
    logger.debug("有限群 %s 共 %d 个自同构", G, len(result))
    return result


def finite_endomorphisms(G: GroupHandle) -> List[Morphism]:
    """有限群的全部自同态（不要求可逆）"""
    n = G.order
    result = []
    for choice in itertools.product(range(n), repeat=len(G.finite_generators)):
        images = tuple(Element(G, x) for x in choice)
        try:
            element_map = _extend_finite(G, G, images)
        except GroupInputError:
            continue
        result.append(Morphism(domain=G, codomain=G, images=images, element_map=element_map))
    return result


def morphism_order(phi: Morphism, limit: int = 10000) -> Optional[int]:
    """有限群自同构的阶；超过 limit 返回 None"""
    if phi.element_map is None:
        return None
    current = phi.element_map
    n = len(current)
    ident = tuple(range(n))
    k = 1
    while current != ident:
        current = tuple(phi.element_map[x] for x in current)
        k += 1
        if k > limit:
            return None
    return k

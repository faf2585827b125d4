"""
K_r 切片与陪集交

对 G ⋊_φ Z 中的陪集 K = (t^s g)H，H = ⟨t^{k_i} g_i⟩：
K_r = {x ∈ G | t^r x ∈ K} 要么为空，要么是 H∩G 的一个陪集。
空当且仅当 r - s ∉ gcd(k_i)·Z。
"""

import logging
from collections import deque
from typing import List, Optional, Tuple

from group_kernel.cache_service import BASE_INTERSECTIONS, get_computation_cache
from group_kernel.errors import CapabilityError, ErrorMessages, GroupInputError
from group_kernel.kernel import conjugate, identity, inv, morphism_matrix, morphism_power, mul, power, product, sort_elements
from group_kernel import integer_matrix as im
from group_kernel.structures import Element, GroupFamily, GroupHandle
from subset_targets.lattice import LatticeSubgroup, bezout, echelon_with_transform
from subset_targets.stallings import coset_meeting_point, intersect
from subset_targets.targets import (
    Coset,
    FiniteSet,
    SlicedTarget,
    SliceKind,
    Subgroup,
    Target,
)

logger = logging.getLogger(__name__)


def _check_semidirect(H: Subgroup) -> GroupHandle:
    G = H.group
    if G.family != GroupFamily.SEMIDIRECT:
        raise GroupInputError(ErrorMessages.FAMILY_UNSUPPORTED.format(family=G.family, operation="slice"))
    return G


def bezout_element(H: Subgroup) -> Tuple[int, Optional[Element]]:
    """
    H 中 t 指数恰为 d = gcd(k_i) 的元素 τ

    Returns:
        (d, τ)；d = 0 时 τ 为 None
    """
    G = _check_semidirect(H)
    d, coefficients = bezout(H.t_exponents)
    if d == 0:
        return 0, None
    tau = product(G, (power(g, c) for g, c in zip(H.generators, coefficients) if c))
    return d, tau


def _seeds(H: Subgroup) -> Tuple[int, Optional[Element], List[Element]]:
    """H∩G 的种子：gen_i·τ^{-k_i/d} 的基部分"""
    G = H.group
    d, tau = bezout_element(H)
    seeds = []
    for g in H.generators:
        k = g.payload[0]
        if d == 0:
            seeds.append(g.payload[1])
            continue
        x = mul(G, g, power(tau, -(k // d))) if k else g
        seeds.append(x.payload[1])
    return d, tau, seeds


def base_intersection(H: Subgroup) -> LatticeSubgroup:
    """
    H ∩ Z^n（G = Z^n ⋊_A Z）

    种子格在 τ 共轭（即 A^d 与 A^{-d}）下饱和，升链条件保证终止。

    Raises:
        CapabilityError: 基群不是自由交换群
    """
    G = _check_semidirect(H)
    if G.base.family != GroupFamily.ABELIAN:
        raise CapabilityError(ErrorMessages.SUBGROUP_PART_UNAVAILABLE, missing="base_intersection")
    return get_computation_cache().get_or_compute(BASE_INTERSECTIONS, H, lambda: _abelian_base_intersection(H))


def _abelian_base_intersection(H: Subgroup) -> LatticeSubgroup:
    G = H.group
    n = G.base.rank
    d, _, seeds = _seeds(H)
    lattice = LatticeSubgroup.from_generators([s.payload for s in seeds], n)
    if d == 0:
        return lattice
    forward = morphism_matrix(morphism_power(G.phi, d))
    backward = morphism_matrix(morphism_power(G.phi, -d))
    rounds = 0
    while True:
        rounds += 1
        grown = lattice.sum(lattice.image(forward)).sum(lattice.image(backward))
        if grown == lattice:
            break
        lattice = grown
    logger.debug("基群交饱和完成: d=%d, %d 轮, 秩 %d", d, rounds, lattice.rank)
    return lattice


def _finite_base_intersection(H: Subgroup) -> Subgroup:
    """
    有限基群：种子在 τ^{±1} 共轭下的轨道生成的子群

    τ = t^d h0 在基群上的共轭作用为 x ↦ h0^{-1}(xφ^d)h0。
    """
    G = H.group
    base = G.base
    d, tau, seeds = _seeds(H)
    movers = [tau, inv(G, tau)] if d else []
    generators_found = {s.payload for s in seeds}
    pending = deque(generators_found)
    while pending:
        x = Element(G, (0, Element(base, pending.popleft())))
        for y in movers:
            image = conjugate(x, y).payload[1].payload
            if image not in generators_found:
                generators_found.add(image)
                pending.append(image)
    reached = {base.identity_index}
    queue = deque([base.identity_index])
    while queue:
        x = queue.popleft()
        for s in generators_found:
            y = base.table[x][s]
            if y not in reached:
                reached.add(y)
                queue.append(y)
    logger.debug("有限基群交: d=%d, %d 个共轭生成元, 阶 %d", d, len(generators_found), len(reached))
    return Subgroup.from_members(base, reached)


def base_part(H: Subgroup) -> Optional[Subgroup]:
    """
    H ∩ G 作为基群子群；不可计算时返回 None

    - 所有 k_i = 0：直接取生成元的基部分（任意群族）
    - 交换基群：base_intersection
    - 有限基群：闭包
    """
    G = _check_semidirect(H)
    if H.lies_in_base:
        return Subgroup(G.base, tuple(g.payload[1] for g in H.generators))
    if G.base.family == GroupFamily.ABELIAN:
        return Subgroup.from_lattice(G.base, base_intersection(H))
    if G.base.family == GroupFamily.FINITE:
        return get_computation_cache().get_or_compute(
            BASE_INTERSECTIONS, ("finite", H), lambda: _finite_base_intersection(H)
        )
    return None


def slice_coset(K: Coset, r: int) -> SlicedTarget:
    """
    陪集的 K_r 切片

    Returns:
        EMPTY，或 COSET(h, H∩G)；H∩G 不可计算时 subgroup 为 None（只保留代表元）
    """
    G = _check_semidirect(K.subgroup)
    H = K.subgroup
    s, g = K.representative.payload
    d, tau = bezout_element(H)
    if d == 0:
        if r != s:
            return SlicedTarget(kind=SliceKind.EMPTY, group=G.base)
        witness = K.representative
    else:
        if (r - s) % d:
            return SlicedTarget(kind=SliceKind.EMPTY, group=G.base)
        c = (r - s) // d
        witness = mul(G, K.representative, power(tau, c)) if c else K.representative
    h = witness.payload[1]
    sub = base_part(H)
    if sub is None:
        logger.warning("✗ H∩G 不可计算（基群 %s），切片只保留代表元", G.base.family.value)
    return SlicedTarget(kind=SliceKind.COSET, group=G.base, representative=h, subgroup=sub)


def slice_target(K: Target, r: int) -> SlicedTarget:
    """任意目标的 K_r 切片"""
    G = K.group
    if G.family != GroupFamily.SEMIDIRECT:
        raise GroupInputError(ErrorMessages.FAMILY_UNSUPPORTED.format(family=G.family, operation="slice"))
    if isinstance(K, FiniteSet):
        elements = sort_elements(x.payload[1] for x in K.elements if x.payload[0] == r)
        return SlicedTarget(kind=SliceKind.FINITE, group=G.base, elements=elements)
    if isinstance(K, Subgroup):
        return slice_coset(Coset(identity(G), K), r)
    return slice_coset(K, r)


# ==================== 陪集交 ====================


def coset_intersect(c1: Coset, c2: Coset) -> SlicedTarget:
    """
    g1·H1 ∩ g2·H2：空，或 z·(H1∩H2)

    Raises:
        CapabilityError: 群族不支持子群交
    """
    G = c1.group
    if c2.group is not G:
        raise GroupInputError(ErrorMessages.GROUP_MISMATCH.format(group=G))
    family = G.family
    if family == GroupFamily.ABELIAN:
        return _abelian_coset_intersect(c1, c2)
    if family == GroupFamily.FREE:
        x = mul(G, inv(G, c2.representative), c1.representative)
        y = coset_meeting_point(c1.subgroup.automaton, x, c2.subgroup.automaton)
        if y is None:
            return SlicedTarget(kind=SliceKind.EMPTY, group=G)
        z = mul(G, c2.representative, y)
        common = Subgroup.from_automaton(intersect(c1.subgroup.automaton, c2.subgroup.automaton))
        return SlicedTarget(kind=SliceKind.COSET, group=G, representative=z, subgroup=common)
    if family == GroupFamily.FINITE:
        first = {G.table[c1.representative.payload][h] for h in c1.subgroup.members}
        second = {G.table[c2.representative.payload][h] for h in c2.subgroup.members}
        both = first & second
        if not both:
            return SlicedTarget(kind=SliceKind.EMPTY, group=G)
        common = Subgroup.from_members(G, c1.subgroup.members & c2.subgroup.members)
        return SlicedTarget(kind=SliceKind.COSET, group=G, representative=Element(G, min(both)), subgroup=common)
    raise CapabilityError(ErrorMessages.FAMILY_UNSUPPORTED.format(family=family, operation="coset_intersect"))


def _abelian_coset_intersect(c1: Coset, c2: Coset) -> SlicedTarget:
    G = c1.group
    L1, L2 = c1.subgroup.lattice, c2.subgroup.lattice
    g1, g2 = c1.representative.payload, c2.representative.payload
    target = tuple(b - a for a, b in zip(g1, g2))
    stacked = list(L1.basis) + list(L2.basis)
    if not stacked:
        if any(target):
            return SlicedTarget(kind=SliceKind.EMPTY, group=G)
        return SlicedTarget(kind=SliceKind.COSET, group=G, representative=c1.representative, subgroup=Subgroup(G))
    H, U, rank = echelon_with_transform(im.as_matrix(stacked))
    combined = LatticeSubgroup(dim=G.rank, basis=im.to_rows(H[:rank]))
    coefficients = combined.solve(target)
    if coefficients is None:
        return SlicedTarget(kind=SliceKind.EMPTY, group=G)
    # target = μ·H = (μ·U)·stacked；取落在 L1 的部分
    weights = [sum(mu * int(U[i][j]) for i, mu in enumerate(coefficients)) for j in range(len(stacked))]
    a = tuple(sum(w * row[k] for w, row in zip(weights[: len(L1.basis)], L1.basis)) for k in range(G.rank))
    z = tuple(x + y for x, y in zip(g1, a))
    common = L1.intersect(L2)
    z = common.residue(z)
    return SlicedTarget(
        kind=SliceKind.COSET,
        group=G,
        representative=Element(G, z),
        subgroup=Subgroup.from_lattice(G, common),
    )

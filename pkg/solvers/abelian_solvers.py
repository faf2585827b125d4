"""
自由交换群 Z^n 判定

φ 由整数矩阵 A 给出（行向量右乘）。加法记号下：
- TCP:  (x^{-1}φ) u x = u + x(I − A)，问题变为格 Im(I − A) 的成员问题
- GTCP 陪集目标 c + L：c − u ∈ Im(I − A) + L
- GBrP 陪集目标 v + L：L 有限指数时按方次数 m 取模，模 m 轨道有限，枚举一轮即可完全判定
"""

import logging
from typing import Optional, Sequence, Tuple

from group_kernel import integer_matrix as im
from group_kernel.errors import ErrorMessages, GroupInputError
from group_kernel.kernel import identity, morphism_matrix
from group_kernel.structures import Element, GroupFamily, Morphism
from solvers.config import Budget
from solvers.orbit import orbit_search
from solvers.verdicts import RefutationMethod, Verdict
from subset_targets.lattice import LatticeSubgroup, echelon_with_transform
from subset_targets.targets import Coset, FiniteSet, Target

logger = logging.getLogger(__name__)


def _check_abelian(phi: Morphism) -> int:
    G = phi.domain
    if G.family != GroupFamily.ABELIAN or not phi.is_endomorphism:
        raise GroupInputError(ErrorMessages.FAMILY_UNSUPPORTED.format(family=G.family, operation="abelian solver"))
    return G.rank


def _difference(a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
    return tuple(int(x) - int(y) for x, y in zip(a, b))


def twist_matrix(phi: Morphism):
    """I − A"""
    n = _check_abelian(phi)
    return im.identity_matrix(n) - morphism_matrix(phi)


def solve_combination(rows, target: Sequence[int]) -> Tuple[Optional[Tuple[int, ...]], LatticeSubgroup]:
    """
    求整数 λ 使 λ·rows = target

    Returns:
        (λ, 行生成的格)；无解时 λ 为 None
    """
    dim = len(target)
    if not rows:
        return (None if any(target) else ()), LatticeSubgroup(dim=dim)
    H, U, rank = echelon_with_transform(im.as_matrix(rows))
    lattice = LatticeSubgroup(dim=dim, basis=im.to_rows(H[:rank]))
    mu = lattice.solve(target)
    if mu is None:
        return None, lattice
    coefficients = tuple(
        sum(int(c) * int(U[i, j]) for i, c in enumerate(mu)) for j in range(len(rows))
    )
    return coefficients, lattice


def tcp_abelian(phi: Morphism, u: Element, v: Element) -> Verdict:
    """
    扭共轭：∃x，v = u + x(I − A)

    Returns:
        Yes(conjugator=x)；No(lattice-obstruction) 带 Im(I − A) 的 HNF 基与非零余量
    """
    _check_abelian(phi)
    G = phi.domain
    diff = _difference(v.payload, u.payload)
    rows = [tuple(int(x) for x in row) for row in twist_matrix(phi)]
    coefficients, lattice = solve_combination(rows, diff)
    if coefficients is None:
        residue = lattice.residue(diff)
        logger.debug("✗ v − u 不在 Im(I − A) 中，余量 %s", residue)
        return Verdict.refuted(
            RefutationMethod.LATTICE_OBSTRUCTION,
            stats={"steps": 1},
            basis=lattice.basis,
            residue=residue,
        )
    x = Element(G, coefficients)
    return Verdict.found(conjugator=x, member=v, stats={"steps": 1})


def _coset_parts(T: Target) -> Tuple[Tuple[int, ...], LatticeSubgroup]:
    if isinstance(T, Coset):
        return T.representative.payload, T.subgroup.lattice
    return identity(T.group).payload, T.lattice


def gtcp_coset_abelian(phi: Morphism, u: Element, K: Target) -> Verdict:
    """
    广义扭共轭（陪集或子群目标）：∃z，u + z(I − A) ∈ c + L

    Returns:
        Yes(conjugator=z, member)；No(lattice-obstruction) 带 Im(I − A) + L 的基与余量
    """
    n = _check_abelian(phi)
    G = phi.domain
    if isinstance(K, FiniteSet):
        steps = 0
        for h in K.elements:
            verdict = tcp_abelian(phi, u, h)
            steps += 1
            if verdict.is_yes:
                return Verdict.found(conjugator=verdict.yes.conjugator, member=h, stats={"steps": steps})
        return Verdict.refuted(RefutationMethod.LATTICE_OBSTRUCTION, stats={"steps": steps}, candidates=len(K))
    c, L = _coset_parts(K)
    twist_rows = [tuple(int(x) for x in row) for row in twist_matrix(phi)]
    diff = _difference(c, u.payload)
    coefficients, lattice = solve_combination(twist_rows + list(L.basis), diff)
    if coefficients is None:
        return Verdict.refuted(
            RefutationMethod.LATTICE_OBSTRUCTION,
            stats={"steps": 1},
            basis=lattice.basis,
            residue=lattice.residue(diff),
        )
    z = tuple(coefficients[:n])
    moved = im.vec_mat(z, twist_matrix(phi))
    member = Element(G, tuple(a + b for a, b in zip(u.payload, moved)))
    return Verdict.found(conjugator=Element(G, z), member=member, stats={"steps": 1})


def gbrp_coset_abelian(phi: Morphism, u: Element, v: Element, L: LatticeSubgroup, budget: Budget) -> Verdict:
    """
    广义 Brinkmann 问题：∃k，uA^k ∈ v + L

    L 有限指数（方次数 m）时谓词只依赖 uA^k mod m，模 m 轨道有限，完全判定；
    否则退化为对 v + L 的轨道搜索（三值）。

    Returns:
        Yes(exponent=k, member) 并给出有效 k 的剩余类；
        No(quotient-obstruction, modulus=m, period) 或 orbit-cycle；Unknown
    """
    _check_abelian(phi)
    G = phi.domain
    if L.index() == 1:
        return Verdict.found(exponent=0, member=u, stats={"steps": 1})

    m = L.exponent()
    if m is None:
        logger.debug("L 为无限指数，退化为轨道搜索")
        return orbit_search(phi, u, lambda w: L.contains(_difference(w.payload, v.payload)), budget)

    A = morphism_matrix(phi)
    A_mod = im.mod_matrix(A, m)
    target = im.mod_vector(v.payload, m)

    def hits(w: Tuple[int, ...]) -> bool:
        return L.contains(_difference(w, target))

    w = im.mod_vector(u.payload, m)
    seen = {w: 0}
    sequence = [w]
    while True:
        w = im.mod_vector(im.vec_mat(w, A_mod), m)
        if w in seen:
            break
        seen[w] = len(sequence)
        sequence.append(w)
        if len(sequence) > budget.max_visited:
            return Verdict.exhausted(steps=len(sequence), bound=f"max_visited={budget.max_visited}")
    preperiod = seen[w]
    period = len(sequence) - preperiod
    valid = [k for k, residue in enumerate(sequence) if hits(residue)]
    steps = len(sequence)
    if not valid:
        logger.debug("✗ 模 %d 轨道（周期 %d）不经过 v + L", m, period)
        return Verdict.refuted(
            RefutationMethod.QUOTIENT_OBSTRUCTION,
            stats={"steps": steps},
            modulus=m,
            period=period,
            preperiod=preperiod,
        )
    k = valid[0]
    member = Element(G, im.vec_mat(u.payload, im.mat_pow(A, k)))
    return Verdict.found(
        exponent=k,
        member=member,
        stats={"steps": steps},
        modulus=m,
        period=period,
        preperiod=preperiod,
        residues=tuple(r for r in valid if r >= preperiod),
    )


def replay_quotient_obstruction(phi: Morphism, u: Element, v: Element, L: LatticeSubgroup, modulus: int, period: int, preperiod: int = 0) -> bool:
    """重放 quotient-obstruction：模 m 轨道 前周期+周期 步回到起点后的位置，且从不命中 v + L"""
    if not L.contains_lattice(LatticeSubgroup.scaled(L.dim, modulus)):
        return False
    A_mod = im.mod_matrix(morphism_matrix(phi), modulus)
    target = im.mod_vector(v.payload, modulus)
    w = im.mod_vector(u.payload, modulus)
    trail = [w]
    for _ in range(preperiod + period):
        w = im.mod_vector(im.vec_mat(w, A_mod), modulus)
        trail.append(w)
    if trail[-1] != trail[preperiod]:
        return False
    return not any(L.contains(_difference(x, target)) for x in trail)

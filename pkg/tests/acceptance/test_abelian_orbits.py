"""
有限指数格上的 GBrP 验收测试

uA^k ∈ v + L 只依赖 uA^k mod m（m 为 Z^n/L 的方次数），
所以 gbrp_coset_abelian 对随机矩阵（不要求可逆）也必须给出 Yes/No。
No 的结论用独立的模 m 迭代核对 10^4 步。
"""

import random

import pytest

from group_kernel.builders import abelian_group, matrix_morphism
from group_kernel.kernel import apply_power
from group_kernel.structures import Element
from solvers.abelian_solvers import gbrp_coset_abelian, replay_quotient_obstruction
from subset_targets.lattice import LatticeSubgroup

SAMPLES = 100
CHECK_STEPS = 10_000


def _difference(x, y):
    return tuple(a - b for a, b in zip(x, y))


def _random_instance(rng, dim):
    G = abelian_group(dim)
    A = [[rng.randint(-3, 3) for _ in range(dim)] for _ in range(dim)]
    m = rng.choice([2, 3, 4])
    rows = [tuple(m if i == j else 0 for j in range(dim)) for i in range(dim)]
    rows.append(tuple(rng.randint(-3, 3) for _ in range(dim)))
    L = LatticeSubgroup.from_generators(rows, dim)
    u = Element(G, tuple(rng.randint(-5, 5) for _ in range(dim)))
    v = Element(G, tuple(rng.randint(-5, 5) for _ in range(dim)))
    return matrix_morphism(G, A), A, L, u, v


def _step_mod(x, A, m):
    n = len(x)
    return tuple(sum(x[i] * A[i][j] for i in range(n)) % m for j in range(n))


@pytest.mark.parametrize("dim", [2, 3])
def test_finite_index_orbits_are_decided(dim, budget):
    rng = random.Random(20240620 + dim)
    outcomes = {"yes": 0, "no": 0}
    for _ in range(SAMPLES):
        phi, A, L, u, v = _random_instance(rng, dim)
        verdict = gbrp_coset_abelian(phi, u, v, L, budget)
        assert not verdict.is_unknown, "有限指数格必须完全判定"
        if verdict.is_yes:
            k = verdict.yes.exponent
            assert k >= 0
            assert L.contains(_difference(apply_power(phi, u, k).payload, v.payload)), f"k={k} 不满足 uA^k ∈ v + L"
            for earlier in range(k):
                assert not L.contains(_difference(apply_power(phi, u, earlier).payload, v.payload)), "应返回最小的 k"
            outcomes["yes"] += 1
            continue

        data = verdict.no.data
        m = L.exponent()
        assert data["modulus"] == m
        assert replay_quotient_obstruction(phi, u, v, L, m, data["period"], data["preperiod"])
        x = tuple(c % m for c in u.payload)
        for _ in range(CHECK_STEPS):
            assert not L.contains(_difference(x, v.payload)), "模 m 迭代命中了 v + L"
            x = _step_mod(x, A, m)
        outcomes["no"] += 1
    assert outcomes["yes"] and outcomes["no"], f"随机样本应同时覆盖两种结论: {outcomes}"

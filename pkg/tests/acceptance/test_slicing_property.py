"""
K_r 切片的性质测试（Z² ⋊_A Z，A = [[2,1],[1,1]]）

对随机陪集 K = c·H（生成元 t 指数 |k| ≤ 3，基部分分量 |·| ≤ 2）：
- K 的字球中每个 t 指数为 r 的元素 t^r x 都满足 x ∈ K_r
- 切片接受的 x 都能显式提升回 K：t^r x = c·τ^j·w，τ 与 w 只由 H 的生成元乘出
- K_r 为空当且仅当 r - s ∉ dZ（s 为 c 的 t 指数，d 为 H 生成元 t 指数的 gcd）
"""

import math
import random

import pytest

from group_kernel.kernel import conjugate, identity, inv, mul, power
from group_kernel.structures import Element
from oracle.brute import ball
from subset_targets.lattice import LatticeSubgroup
from subset_targets.slicing import slice_target
from subset_targets.targets import Coset, Subgroup, sliced_member

SAMPLES = 100
LAYERS = range(-3, 4)
LIFT_RADIUS = 4


def _random_element(rng, G):
    vector = (rng.randint(-2, 2), rng.randint(-2, 2))
    return Element(G, (rng.randint(-3, 3), Element(G.base, vector)))


def _random_coset(rng, G):
    H = Subgroup(G, tuple(_random_element(rng, G) for _ in range(rng.randint(1, 3))))
    return Coset(_random_element(rng, G), H)


def _word_ball(G, start, generators, radius):
    """start·w，w 取遍生成元（及其逆）上长度不超过 radius 的字"""
    letters = []
    for g in generators:
        letters.extend((g, inv(G, g)))
    seen = {start}
    frontier = [start]
    for _ in range(radius):
        nxt = []
        for x in frontier:
            for letter in letters:
                y = mul(G, x, letter)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def _shift_element(G, H, d, max_radius=6):
    """在 H 的字球里（按 BFS 顺序）找 t 指数恰为 d 的元素"""
    letters = []
    for g in H.generators:
        letters.extend((g, inv(G, g)))
    seen = {identity(G)}
    frontier = [identity(G)]
    for _ in range(max_radius):
        nxt = []
        for x in frontier:
            for letter in letters:
                y = mul(G, x, letter)
                if y.payload[0] == d:
                    return y
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    raise AssertionError(f"半径 {max_radius} 内找不到 t 指数为 {d} 的元素")


def _lifted_base_part(G, H):
    """
    H∩Z² 的独立构造：种子 gen·τ^{-k/d}，再在 τ^{±1} 共轭下饱和

    所有元素都由 H 的生成元经群乘法得到，因此格中的每个向量都确实在 H 中。
    """
    ks = [g.payload[0] for g in H.generators]
    d = math.gcd(*ks)
    if d == 0:
        return 0, None, LatticeSubgroup.from_generators([g.payload[1].payload for g in H.generators], 2)
    tau = _shift_element(G, H, d)
    seeds = [mul(G, g, power(tau, -(g.payload[0] // d))).payload[1].payload for g in H.generators]
    lattice = LatticeSubgroup.from_generators(seeds, 2)
    movers = (tau, inv(G, tau))
    while True:
        moved = [
            conjugate(Element(G, (0, Element(G.base, b))), y).payload[1].payload
            for b in lattice.basis
            for y in movers
        ]
        grown = LatticeSubgroup.from_generators(list(lattice.basis) + moved, 2)
        if grown == lattice:
            return d, tau, lattice
        lattice = grown


def _lifts_into_coset(G, K, d, tau, lattice, x):
    """c^{-1}·x = τ^j·w，w ∈ H∩Z²"""
    y = mul(G, inv(G, K.representative), x)
    m = y.payload[0]
    if d == 0:
        return m == 0 and lattice.contains(y.payload[1].payload)
    if m % d:
        return False
    w = mul(G, power(tau, -(m // d)), y)
    return w.payload[0] == 0 and lattice.contains(w.payload[1].payload)


class TestSlicingProperty:
    @pytest.mark.parametrize("radius", [4, pytest.param(6, marks=pytest.mark.slow)])
    def test_coset_ball_lies_in_its_slices(self, cat_product, radius):
        """K 的字球中的元素按 t 指数落入对应切片"""
        rng = random.Random(f"slice-ball-{radius}")
        G = cat_product
        checked = 0
        for _ in range(SAMPLES):
            K = _random_coset(rng, G)
            slices = {}
            for x in _word_ball(G, K.representative, K.subgroup.generators, radius):
                r, v = x.payload
                if r not in LAYERS:
                    continue
                if r not in slices:
                    slices[r] = slice_target(K, r)
                assert sliced_member(slices[r], v), f"t^{r} {v.payload} ∈ K 却不在 K_{r} 中"
                checked += 1
        assert checked > SAMPLES

    def test_slice_members_lift_into_coset(self, cat_product):
        """G 的球中被切片接受的元素都能显式写成 K 中的元素"""
        rng = random.Random(20240615)
        G = cat_product
        candidates = [x for x in ball(G, LIFT_RADIUS).elements if x.payload[0] in LAYERS]
        lifted = 0
        for _ in range(SAMPLES):
            K = _random_coset(rng, G)
            d, tau, lattice = _lifted_base_part(G, K.subgroup)
            slices = {r: slice_target(K, r) for r in LAYERS}
            for x in candidates:
                r, v = x.payload
                accepted = sliced_member(slices[r], v)
                assert accepted == _lifts_into_coset(G, K, d, tau, lattice, x), (
                    f"t^{r} {v.payload}: 切片判定 {accepted} 与显式提升不一致"
                )
                lifted += accepted
            # 代表元所在层至少有一个元素
            s, h = K.representative.payload
            assert sliced_member(slice_target(K, s), h)
        assert lifted > 0

    def test_empty_exactly_off_the_residue_class(self, cat_product):
        """K_r = ∅ ⇔ r - s ∉ dZ"""
        rng = random.Random(20240613)
        G = cat_product
        for _ in range(SAMPLES):
            H = Subgroup(G, tuple(_random_element(rng, G) for _ in range(rng.randint(0, 3))))
            c = _random_element(rng, G)
            s = c.payload[0]
            d = math.gcd(*(g.payload[0] for g in H.generators)) if H.generators else 0
            for r in LAYERS:
                expected_empty = (r != s) if d == 0 else bool((r - s) % d)
                assert slice_target(Coset(c, H), r).is_empty == expected_empty, f"d={d}, s={s}, r={r}"

    def test_subgroup_slice_contains_identity(self, cat_product):
        """子群的 K_0 含单位元"""
        rng = random.Random(20240614)
        G = cat_product
        for _ in range(SAMPLES):
            H = Subgroup(G, tuple(_random_element(rng, G) for _ in range(rng.randint(1, 3))))
            assert sliced_member(slice_target(H, 0), identity(G.base))

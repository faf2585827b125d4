"""
虚自由群 F2 × Z/2 上 BrP 的验收测试

随机自同态（F 全不变，z ↦ z 或 z ↦ 1）与 gφ^k 的直接迭代（k ≤ 30）对照，
并检查植入解（k ≤ 10）一定被找到。
"""

import random

from group_kernel.builders import cyclic_group, free_times_finite, make_morphism
from group_kernel.kernel import apply
from group_kernel.notation import parse_element
from solvers.virtually_free import brp_virtually_free

SAMPLES = 100
DIRECT_STEPS = 30
PLANTED_MAX = 10
SHORT_IMAGES = ("1", "a", "a^-1", "b", "b^-1")
# 字长至多线性增长的模板
TEMPLATES = (("a b", "b"), ("a b", "1"), ("b a", "b"), ("b", "a"), ("a^-1", "b^-1"))
LETTERS = ("a", "a^-1", "b", "b^-1")


def _random_endomorphism(rng, G):
    if rng.random() < 0.3:
        image_a, image_b = rng.choice(TEMPLATES)
    else:
        image_a, image_b = rng.choice(SHORT_IMAGES), rng.choice(SHORT_IMAGES)
    image_z = rng.choice(("z", "1"))
    return make_morphism(G, G, [parse_element(G, w) for w in (image_a, image_b, image_z)])


def _random_element(rng, G):
    letters = [rng.choice(LETTERS) for _ in range(rng.randint(0, 3))]
    if rng.random() < 0.5:
        letters.append("z")
    return parse_element(G, " ".join(letters) or "1")


def _first_hit(phi, g, h):
    current = g
    for k in range(DIRECT_STEPS + 1):
        if current == h:
            return k
        current = apply(phi, current)
    return None


class TestVirtuallyFreePipeline:
    def test_matches_direct_iteration(self, f2, budget):
        rng = random.Random(20240701)
        G = free_times_finite(f2, cyclic_group(2, generator="z"))
        outcomes = {"yes": 0, "no": 0, "unknown": 0}
        for index in range(SAMPLES):
            phi = _random_endomorphism(rng, G)
            g = _random_element(rng, G)
            planted = None
            if index % 2 == 0:
                planted = rng.randint(0, PLANTED_MAX)
                h = g
                for _ in range(planted):
                    h = apply(phi, h)
            else:
                h = _random_element(rng, G)

            verdict = brp_virtually_free(G, phi, g, h, budget)
            direct = _first_hit(phi, g, h)
            if direct is not None:
                assert verdict.is_yes, f"直接迭代在 k={direct} 命中，求解器却给出 {verdict.outcome.value}"
                assert verdict.yes.exponent == direct, "应返回最小的 k"
            if planted is not None:
                assert verdict.is_yes and verdict.yes.exponent <= planted
            if verdict.is_yes:
                assert _first_hit(phi, g, h) == verdict.yes.exponent or verdict.yes.exponent > DIRECT_STEPS
            outcomes[verdict.outcome.value] += 1
        assert outcomes["yes"] and outcomes["no"], f"随机样本应同时覆盖两种结论: {outcomes}"

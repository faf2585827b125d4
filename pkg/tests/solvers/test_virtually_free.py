"""
虚自由群 BrP 测试（F2 × Z/2，φ: a ↔ b，z ↦ z）
"""

import pytest

from group_kernel.builders import cyclic_group, free_times_finite, make_morphism
from group_kernel.errors import GroupInputError
from group_kernel.kernel import apply_power
from group_kernel.notation import parse_element
from solvers.verdicts import RefutationMethod
from solvers.virtually_free import brp_virtually_free, coset_orbit


@pytest.fixture
def vf_group(f2):
    return free_times_finite(f2, cyclic_group(2, generator="z"))


@pytest.fixture
def vf_swap(vf_group):
    a, b, z = (parse_element(vf_group, x) for x in ("a", "b", "z"))
    return make_morphism(vf_group, vf_group, [b, a, z], name="swap_z")


class TestCosetOrbit:
    def test_fixed_coset(self, vf_group, vf_swap):
        assert coset_orbit(vf_group, vf_swap, 1) == ([1], 0)
        assert coset_orbit(vf_group, vf_swap, 0) == ([0], 0)


class TestBrinkmannVirtuallyFree:
    def test_found_through_suspension(self, vf_group, vf_swap, budget):
        g = parse_element(vf_group, "a | z")
        h = parse_element(vf_group, "b | z")
        verdict = brp_virtually_free(vf_group, vf_swap, g, h, budget)
        assert verdict.is_yes
        assert verdict.yes.exponent == 1
        assert (verdict.yes.extra["s"], verdict.yes.extra["p"]) == (0, 1)
        assert apply_power(vf_swap, g, verdict.yes.exponent) == h

    def test_immediate_hit(self, vf_group, vf_swap, budget):
        g = parse_element(vf_group, "a b | z")
        verdict = brp_virtually_free(vf_group, vf_swap, g, g, budget)
        assert verdict.yes.exponent == 0

    def test_suspension_cycle(self, vf_group, vf_swap, budget):
        """a c ↦ b c ↦ a c 成环，永远到不了 a b c"""
        g = parse_element(vf_group, "a | z")
        h = parse_element(vf_group, "a b | z")
        verdict = brp_virtually_free(vf_group, vf_swap, g, h, budget)
        assert verdict.is_no
        assert verdict.no.method == RefutationMethod.ORBIT_CYCLE
        assert "suspension" in verdict.no.data

    def test_coset_never_reached(self, vf_group, vf_swap, budget):
        g = parse_element(vf_group, "a | z")
        h = parse_element(vf_group, "a")
        verdict = brp_virtually_free(vf_group, vf_swap, g, h, budget)
        assert verdict.is_no
        assert verdict.no.data["coset_orbit"] == (1,)

    def test_free_part_must_be_invariant(self, vf_group, budget):
        """a ↦ a z 把 F 映出 F"""
        a, b, z = (parse_element(vf_group, x) for x in ("a", "b", "z"))
        phi = make_morphism(vf_group, vf_group, [parse_element(vf_group, "a z"), b, z])
        with pytest.raises(GroupInputError):
            brp_virtually_free(vf_group, phi, a, b, budget)

    def test_requires_virtually_free_group(self, f2, swap, budget):
        a = parse_element(f2, "a")
        with pytest.raises(GroupInputError):
            brp_virtually_free(f2, swap, a, a, budget)

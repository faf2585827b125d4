"""
Stallings 自动机测试

重点：规范编号与折叠顺序无关、成员判定、交与陪集交。
"""

import random

import pytest

from group_kernel.errors import GroupInputError
from group_kernel.notation import parse_element
from subset_targets.stallings import (
    bouquet_edges,
    conjugate_by,
    coset_meeting_point,
    fold_edges,
    intersect,
    stallings_core,
)


def _core(group, *words):
    return stallings_core([parse_element(group, w) for w in words], group)


class TestStallingsCore:
    def test_trivial_subgroup(self, f2):
        A = stallings_core([], f2)
        assert A.is_trivial()
        assert A.accepts(())
        assert not A.accepts(parse_element(f2, "a").payload)

    def test_whole_group(self, f2):
        A = _core(f2, "a", "b")
        assert A.num_states == 1
        assert A.rank == 2
        assert A.accepts(parse_element(f2, "a b^-1 a^3").payload)

    def test_conjugated_cyclic(self, f2):
        """⟨a b a^-1, a b^2 a^-1⟩ = a⟨b⟩a^-1"""
        A = _core(f2, "a b a^-1", "a b^2 a^-1")
        assert A.num_states == 2
        assert A.rank == 1
        assert A.accepts(parse_element(f2, "a b^5 a^-1").payload)
        assert not A.accepts(parse_element(f2, "b").payload)

    def test_membership_reduces_input(self, f2):
        A = _core(f2, "a^2")
        assert A.accepts((1, 2, -2, 1))
        assert not A.accepts((1,))

    def test_generators_span_same_subgroup(self, f2):
        A = _core(f2, "a^2", "b a b^-1", "a^2 b a b^-1")
        again = stallings_core(A.generators(), f2)
        assert again == A
        assert A.rank == 2

    def test_generator_order_irrelevant(self, f2):
        assert _core(f2, "a b", "b a", "a^2") == _core(f2, "a^2", "b a", "a b")

    def test_fold_order_independent(self, f2):
        """任意插边顺序折叠出同一个核心图"""
        gens = [parse_element(f2, w) for w in ("a b a^-1", "a b^2 a^-1", "b^-1 a b", "a^3")]
        count, edges = bouquet_edges(gens)
        expected = stallings_core(gens, f2)
        rng = random.Random(20240601)
        for _ in range(10):
            order = list(range(len(edges)))
            rng.shuffle(order)
            assert fold_edges(f2, count, edges, order) == expected

    def test_mixed_groups_rejected(self, f2, z2):
        with pytest.raises(GroupInputError):
            stallings_core([parse_element(z2, "(1,0)")])


class TestAutomatonConstructions:
    def test_intersection_of_cyclic_subgroups(self, f2):
        """⟨a^2⟩ ∩ ⟨a^3⟩ = ⟨a^6⟩"""
        C = intersect(_core(f2, "a^2"), _core(f2, "a^3"))
        assert C == _core(f2, "a^6")
        assert C.accepts(parse_element(f2, "a^-12").payload)
        assert not C.accepts(parse_element(f2, "a^2").payload)

    def test_disjoint_intersection_is_trivial(self, f2):
        assert intersect(_core(f2, "a"), _core(f2, "b")).is_trivial()

    def test_conjugate_by(self, f2):
        C = conjugate_by(_core(f2, "a"), parse_element(f2, "b"))
        assert C.accepts(parse_element(f2, "b^-1 a^4 b").payload)
        assert not C.accepts(parse_element(f2, "a").payload)

    def test_coset_meeting_point(self, f2):
        """⟨ab⟩ ∩ a⟨b⟩ = {ab}"""
        y = coset_meeting_point(_core(f2, "b"), parse_element(f2, "a"), _core(f2, "a b"))
        assert y == parse_element(f2, "a b")

    def test_coset_meeting_point_none(self, f2):
        assert coset_meeting_point(_core(f2, "b"), parse_element(f2, "a"), _core(f2, "b")) is None

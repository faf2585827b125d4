"""
归约演算测试

降阶计划的形状、见证回译的代数恒等式、提升与降阶的往返。
"""

import random

import pytest

from group_kernel.errors import CapabilityError, GroupInputError
from group_kernel.builders import semidirect_product
from group_kernel.kernel import conjugate, identity, inner_morphism, mul
from group_kernel.notation import parse_element
from group_kernel.structures import Element
from reduction.engine import (
    generalize,
    inner_tcp_to_gcp,
    lift_brcp,
    lift_tcp,
    lower_gcp,
    translate_plan_witness,
    virtually_inner_tcp,
)
from reduction.instances import ProblemInstance, ProblemKind
from solvers.evaluate import evaluate
from subset_targets.targets import Coset, FiniteSet, Subgroup


def _random_vector(rng, G, bound=4):
    return Element(G, tuple(rng.randint(-bound, bound) for _ in range(G.rank)))


class TestProblemInstance:
    def test_generalize_point_target(self, z2, cat_map):
        g, h = parse_element(z2, "(1,0)"), parse_element(z2, "(5,3)")
        inst = ProblemInstance(kind=ProblemKind.BRP, group=z2, subject=g, other=h, morphism=cat_map)
        general = generalize(inst)
        assert general.kind == ProblemKind.GBRP
        assert general.target == FiniteSet.of(z2, [h])
        assert generalize(general) is general

    def test_morphism_required(self, z2):
        g = parse_element(z2, "(1,0)")
        with pytest.raises(GroupInputError, match="需要态射"):
            ProblemInstance(kind=ProblemKind.TCP, group=z2, subject=g, other=g)

    def test_cp_rejects_morphism(self, z2, cat_map):
        g = parse_element(z2, "(1,0)")
        with pytest.raises(GroupInputError):
            ProblemInstance(kind=ProblemKind.CP, group=z2, subject=g, other=g, morphism=cat_map)

    def test_generalized_needs_target(self, z2):
        g = parse_element(z2, "(1,0)")
        with pytest.raises(GroupInputError, match="目标"):
            ProblemInstance(kind=ProblemKind.GCP, group=z2, subject=g, other=g)

    def test_target_group_checked(self, z2, f2):
        g = parse_element(z2, "(1,0)")
        with pytest.raises(GroupInputError):
            ProblemInstance(kind=ProblemKind.GCP, group=z2, subject=g, target=FiniteSet.of(f2, []))


class TestLowerGcp:
    def test_zero_exponent_gives_brcp(self, cat_product, z2):
        g = parse_element(cat_product, "e1")
        K = FiniteSet.of(cat_product, [parse_element(cat_product, "t^0 : (5,3)")])
        inst = ProblemInstance(kind=ProblemKind.GCP, group=cat_product, subject=g, target=K)
        plan = lower_gcp(inst)

        assert plan.provenance == "lower-gcp:r=0"
        assert len(plan) == 1
        member_inst = plan.instances[0]
        assert member_inst.kind == ProblemKind.GBRCP
        assert member_inst.group is z2
        assert member_inst.target == FiniteSet.of(z2, [parse_element(z2, "(5,3)")])

        x = translate_plan_witness(plan, 0, None, 2)
        assert x == parse_element(cat_product, "t^2 : (0,0)")
        assert conjugate(g, x) in K.elements

    @pytest.mark.parametrize("r", [1, 3, -2])
    def test_nonzero_exponent_gives_tcp_family(self, cat_product, r):
        g = Element(cat_product, (r, parse_element(cat_product.base, "(1,0)")))
        K = FiniteSet.of(cat_product, [g])
        plan = lower_gcp(ProblemInstance(kind=ProblemKind.GCP, group=cat_product, subject=g, target=K))

        assert plan.provenance == f"lower-gcp:r={r}"
        assert len(plan) == abs(r)
        assert all(i.kind == ProblemKind.GTCP for i in plan.instances)
        assert [link.shift for link in plan.links] == list(range(abs(r)))

    @pytest.mark.parametrize("r", [2, -3])
    def test_witness_translation_identity(self, cat_product, r):
        """X = t^j z 时 X^{-1}(t^r g)X = t^r · [(z^{-1}φ^r)(gφ^j) z]"""
        rng = random.Random(7 + r)
        base = cat_product.base
        g = Element(cat_product, (r, parse_element(base, "(2,-1)")))
        plan = lower_gcp(
            ProblemInstance(kind=ProblemKind.GCP, group=cat_product, subject=g, target=FiniteSet.of(cat_product, [g]))
        )
        for _ in range(5):
            for j, member_inst in enumerate(plan.instances):
                z = _random_vector(rng, base)
                X = translate_plan_witness(plan, j, z)
                assert conjugate(g, X) == Element(cat_product, (r, evaluate(member_inst, z)))

    def test_brcp_translation_identity(self, cat_product):
        """X = t^k v 时 X^{-1} g X = v^{-1}(gφ^k)v"""
        rng = random.Random(11)
        base = cat_product.base
        g = Element(cat_product, (0, parse_element(base, "(1,2)")))
        plan = lower_gcp(
            ProblemInstance(kind=ProblemKind.GCP, group=cat_product, subject=g, target=FiniteSet.of(cat_product, [g]))
        )
        for _ in range(5):
            k = rng.randint(-3, 3)
            v = _random_vector(rng, base)
            X = translate_plan_witness(plan, 0, v, k)
            assert conjugate(g, X) == Element(cat_product, (0, evaluate(plan.instances[0], v, k)))

    def test_empty_slice_member_target(self, shear_product):
        """⟨t^2⟩ 的奇数切片为空，成员目标为空有限集"""
        H = Subgroup(shear_product, (parse_element(shear_product, "t^2"),))
        g = parse_element(shear_product, "t e1")
        plan = lower_gcp(ProblemInstance(kind=ProblemKind.GCP, group=shear_product, subject=g, target=H))
        assert isinstance(plan.instances[0].target, FiniteSet)
        assert plan.instances[0].target.is_empty

    def test_requires_semidirect(self, z2):
        g = parse_element(z2, "(1,0)")
        with pytest.raises(GroupInputError):
            lower_gcp(ProblemInstance(kind=ProblemKind.CP, group=z2, subject=g, other=g))

    def test_free_base_capability_gap(self, f2, swap):
        G = semidirect_product(f2, swap)
        H = Subgroup(G, (parse_element(G, "t"),))
        inst = ProblemInstance(kind=ProblemKind.GCP, group=G, subject=parse_element(G, "a"), target=H)
        with pytest.raises(CapabilityError):
            lower_gcp(inst)


class TestLifts:
    def test_lift_tcp_round_trip(self, cat_product, cat_map, z2):
        K = FiniteSet.of(z2, [parse_element(z2, "(0,3)")])
        g = parse_element(z2, "(1,1)")
        lifted = lift_tcp(K, cat_map, g, ambient=cat_product)
        plan = lower_gcp(lifted)
        assert len(plan) == 1
        lowered = plan.instances[0]
        assert lowered.kind == ProblemKind.GTCP
        assert lowered.subject == g
        assert lowered.morphism is cat_map
        assert lowered.target == K

    def test_lift_brcp_round_trip(self, cat_product, cat_map, z2):
        K = Subgroup(z2, (parse_element(z2, "(2,0)"),))
        g = parse_element(z2, "(1,0)")
        lowered = lower_gcp(lift_brcp(K, cat_map, g, ambient=cat_product)).instances[0]
        assert lowered.kind == ProblemKind.GBRCP
        assert lowered.subject == g
        assert lowered.target == K

    def test_lift_builds_ambient(self, cat_map, z2):
        inst = lift_brcp(FiniteSet.of(z2, []), cat_map, identity(z2))
        assert inst.group.base is z2
        assert inst.group.phi is cat_map

    def test_ambient_must_match(self, cat_map, z2):
        with pytest.raises(GroupInputError):
            lift_tcp(FiniteSet.of(z2, []), cat_map, identity(z2), ambient=z2)


class TestInnerAutomorphisms:
    def test_inner_tcp_identity(self, f2):
        """(z^{-1}λ_w) g z = w^{-1} · z^{-1}(wg)z"""
        rng = random.Random(3)
        w = parse_element(f2, "a b")
        g = parse_element(f2, "b^2 a")
        phi = inner_morphism(f2, w)
        letters = ["a", "b", "a^-1", "b^-1"]
        for _ in range(5):
            z = parse_element(f2, " ".join(rng.choice(letters) for _ in range(4)))
            inst = ProblemInstance(kind=ProblemKind.GTCP, group=f2, subject=g, morphism=phi, target=FiniteSet.of(f2, []))
            twisted = evaluate(inst, z)
            assert mul(f2, w, twisted) == conjugate(mul(f2, w, g), z)

    def test_virtually_inner_tcp(self, f2):
        w = parse_element(f2, "a")
        K = Subgroup(f2, (w,))
        inst = ProblemInstance(
            kind=ProblemKind.GTCP, group=f2, subject=parse_element(f2, "b"), morphism=inner_morphism(f2, w), target=K
        )
        gcp = virtually_inner_tcp(inst)
        assert gcp.kind == ProblemKind.GCP
        assert gcp.subject == parse_element(f2, "a b")
        assert gcp.target == K

    def test_free_coset_target_unsupported(self, f2):
        K = Subgroup(f2, (parse_element(f2, "a"),))
        with pytest.raises(CapabilityError):
            inner_tcp_to_gcp(K, parse_element(f2, "b"), parse_element(f2, "a"))

    def test_abelian_coset_target(self, z2):
        K = Subgroup(z2, (parse_element(z2, "(2,0)"),))
        gcp = inner_tcp_to_gcp(K, parse_element(z2, "(0,1)"), parse_element(z2, "(1,0)"))
        assert isinstance(gcp.target, Coset)
        assert gcp.subject == parse_element(z2, "(1,1)")

    def test_requires_inner_witness(self, z2, cat_map):
        inst = ProblemInstance(
            kind=ProblemKind.TCP, group=z2, subject=identity(z2), other=identity(z2), morphism=cat_map
        )
        with pytest.raises(CapabilityError):
            virtually_inner_tcp(inst)

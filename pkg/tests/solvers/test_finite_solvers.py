"""
有限群穷举判定测试
"""

import pytest

from group_kernel.builders import finite_automorphisms, make_morphism
from group_kernel.errors import GroupInputError
from group_kernel.notation import parse_element
from reduction.instances import ProblemInstance, ProblemKind
from solvers.finite_solvers import finite_orbit, solve_finite
from solvers.verdicts import RefutationMethod
from subset_targets.targets import Subgroup


@pytest.fixture
def negation(z6):
    """Z/6 上的 x ↦ −x"""
    a5 = parse_element(z6, "a^5")
    return make_morphism(z6, z6, [a5], [a5], name="neg")


def _instance(kind, group, g, h=None, morphism=None, target=None):
    return ProblemInstance(kind=kind, group=group, subject=g, other=h, morphism=morphism, target=target)


class TestSolveFinite:
    def test_transpositions_conjugate(self, s3):
        s, c = parse_element(s3, "s"), parse_element(s3, "c")
        other = parse_element(s3, "c^-1 s c")
        verdict = solve_finite(_instance(ProblemKind.CP, s3, s, other))
        assert verdict.is_yes
        assert verdict.yes.member == other

    def test_orders_differ(self, s3):
        verdict = solve_finite(_instance(ProblemKind.CP, s3, parse_element(s3, "s"), parse_element(s3, "c")))
        assert verdict.is_no
        assert verdict.no.method == RefutationMethod.EXHAUSTED_FINITE
        assert verdict.no.data["searched"] == 6

    def test_twisted_classes_are_parity(self, z6, negation):
        """(z^{-1}φ) g z = g + 2z"""
        g = parse_element(z6, "a")
        yes = solve_finite(_instance(ProblemKind.TCP, z6, g, parse_element(z6, "a^3"), negation))
        assert yes.yes.conjugator.payload == 1
        no = solve_finite(_instance(ProblemKind.TCP, z6, g, parse_element(z6, "a^4"), negation))
        assert no.is_no

    def test_brinkmann_orbit(self, z6, negation):
        g = parse_element(z6, "a")
        assert solve_finite(_instance(ProblemKind.BRP, z6, g, parse_element(z6, "a^5"), negation)).yes.exponent == 1
        verdict = solve_finite(_instance(ProblemKind.BRP, z6, g, parse_element(z6, "a^2"), negation))
        assert verdict.no.data["orbit_length"] == 2

    def test_gbrcp_subgroup_target(self, s3):
        """S3 的非平凡自同构轨道中某元素共轭进 ⟨c⟩"""
        phi = finite_automorphisms(s3)[1]
        H = Subgroup(s3, (parse_element(s3, "c"),))
        verdict = solve_finite(_instance(ProblemKind.GBRCP, s3, parse_element(s3, "c^2"), morphism=phi, target=H))
        assert verdict.is_yes
        assert verdict.yes.exponent == 0

    def test_finite_orbit(self, z6, negation):
        assert [x.payload for x in finite_orbit(negation, parse_element(z6, "a^2"))] == [2, 4]
        assert [x.payload for x in finite_orbit(negation, parse_element(z6, "a^3"))] == [3]

    def test_requires_finite_group(self, z2):
        g = parse_element(z2, "(1,0)")
        with pytest.raises(GroupInputError):
            solve_finite(_instance(ProblemKind.CP, z2, g, g))

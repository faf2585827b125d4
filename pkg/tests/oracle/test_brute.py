"""
暴力预言机测试，并与求解器交叉校验
"""

import itertools
import random

import pytest

from group_kernel.builders import finite_automorphisms, semidirect_product
from group_kernel.errors import BudgetExceededError
from group_kernel.kernel import conjugate, identity, inv, mul, product
from group_kernel.notation import parse_element
from group_kernel.structures import Element
from oracle.brute import ball, brute_member, brute_solve
from reduction.instances import ProblemInstance, ProblemKind
from solvers.dispatcher import solve
from solvers.finite_solvers import all_elements
from solvers.verdicts import Outcome, RefutationMethod
from subset_targets.targets import Coset, Subgroup, member


class TestBall:
    def test_sizes(self, z2, f2):
        assert len(ball(z2, 2)) == 13
        assert len(ball(f2, 1)) == 5
        assert len(ball(f2, 2)) == 17

    def test_finite_group_saturates(self, z6):
        assert len(ball(z6, 10)) == 6

    def test_size_limit(self, f2):
        with pytest.raises(BudgetExceededError):
            ball(f2, 3, max_size=10)

    def test_negative_radius(self, f2):
        with pytest.raises(ValueError):
            ball(f2, -1)

    def test_contains(self, f2):
        b = ball(f2, 2)
        assert parse_element(f2, "a b^-1") in b
        assert parse_element(f2, "a b a") not in b


class TestBruteMember:
    """有限基群半直积上不经切片的成员判定"""

    def _product(self, s3):
        return semidirect_product(s3, finite_automorphisms(s3)[0])

    def test_tau_conjugate_of_base_generator(self, s3):
        G = self._product(s3)
        a = parse_element(s3, "s")
        b = conjugate(a, parse_element(s3, "c"))
        H = Subgroup(G, (Element(G, (1, a)), Element(G, (0, b))))
        assert brute_member(H, Element(G, (0, conjugate(b, a))))
        assert all(brute_member(H, Element(G, (r, Element(s3, i)))) for r in (-3, 0, 5) for i in range(s3.order))

    def test_index_two_layers(self, s3):
        G = self._product(s3)
        b = parse_element(s3, "s")
        H = Subgroup(G, (Element(G, (2, identity(s3))), Element(G, (0, b))))
        assert brute_member(H, Element(G, (4, b)))
        assert not brute_member(H, Element(G, (1, identity(s3))))
        assert not brute_member(H, Element(G, (0, parse_element(s3, "c"))))
        K = Coset(Element(G, (1, parse_element(s3, "c"))), H)
        assert brute_member(K, Element(G, (3, mul(s3, parse_element(s3, "c"), b))))
        assert not brute_member(K, Element(G, (2, parse_element(s3, "c"))))

    def test_agrees_with_words_and_member(self, s3):
        """短字都属于 H；并与切片得到的 member 一致"""
        rng = random.Random(20240701)
        for phi in finite_automorphisms(s3):
            G = semidirect_product(s3, phi)
            for _ in range(10):
                gens = tuple(
                    Element(G, (rng.randint(-2, 2), Element(s3, rng.randrange(s3.order))))
                    for _ in range(rng.randint(1, 2))
                )
                H = Subgroup(G, gens)
                letters = [x for g in gens for x in (g, inv(G, g))]
                for word in itertools.product(letters, repeat=3):
                    assert brute_member(H, product(G, word)), "生成元的短字必须属于 H"
                for r in range(-3, 4):
                    for i in range(s3.order):
                        y = Element(G, (r, Element(s3, i)))
                        assert brute_member(H, y) == member(H, y), f"r={r}, #{i} 上两种判定不一致"


class TestBruteSolve:
    def test_semidirect_conjugacy(self, shear_product):
        inst = ProblemInstance(
            kind=ProblemKind.CP,
            group=shear_product,
            subject=parse_element(shear_product, "e1"),
            other=parse_element(shear_product, "t^0 : (1,3)"),
        )
        assert brute_solve(inst, radius=3).is_yes
        assert brute_solve(inst, radius=2).is_unknown

    def test_free_orbit_cycle(self, f2, swap):
        a = parse_element(f2, "a")
        yes = ProblemInstance(kind=ProblemKind.BRP, group=f2, subject=a, other=parse_element(f2, "b"), morphism=swap)
        assert brute_solve(yes).yes.exponent == 1
        no = ProblemInstance(kind=ProblemKind.BRP, group=f2, subject=a, other=parse_element(f2, "a b"), morphism=swap)
        verdict = brute_solve(no)
        assert verdict.no.method == RefutationMethod.ORBIT_CYCLE

    def test_infinite_orbit_is_unknown(self, cat_map, z2):
        inst = ProblemInstance(
            kind=ProblemKind.BRP,
            group=z2,
            subject=parse_element(z2, "(1,0)"),
            other=parse_element(z2, "(0,7)"),
            morphism=cat_map,
        )
        assert brute_solve(inst, kmax=10).outcome == Outcome.UNKNOWN


class TestAgreementOnFiniteGroups:
    """有限群上预言机与求解器都精确，结论必须一致"""

    @pytest.mark.parametrize("kind", [ProblemKind.CP, ProblemKind.TCP, ProblemKind.BRP, ProblemKind.BRCP])
    def test_random_instances(self, s3, kind, budget):
        rng = random.Random(20240611)
        elements = all_elements(s3)
        autos = finite_automorphisms(s3)
        for _ in range(25):
            g, h = rng.choice(elements), rng.choice(elements)
            phi = rng.choice(autos) if kind.needs_morphism else None
            inst = ProblemInstance(kind=kind, group=s3, subject=g, other=h, morphism=phi)
            assert solve(inst, budget).outcome == brute_solve(inst).outcome

"""
有限商流测试
"""

import random

import pytest

from group_kernel.builders import matrix_morphism, semidirect_product
from group_kernel.errors import GroupInputError
from group_kernel.kernel import morphism_matrix, mul
from group_kernel.structures import Element
from separability.quotients import (
    FiniteQuotientSpec,
    QuotientFactor,
    check_polycyclic,
    congruence_specs,
    enumerate_quotients,
    generic_specs,
    multiplicative_order,
)
from solvers.config import Budget


def _random_element(rng, G):
    r = rng.randint(-4, 4)
    v = tuple(rng.randint(-5, 5) for _ in range(G.base.rank))
    return Element(G, (r, Element(G.base, v)))


def _assert_homomorphism(factor, G, seed=7):
    rng = random.Random(seed)
    for _ in range(30):
        x, y = _random_element(rng, G), _random_element(rng, G)
        assert factor.image(mul(G, x, y)) == factor.mul(factor.image(x), factor.image(y))


class TestCongruenceQuotients:
    def test_first_quotient_of_shear(self, shear_product, budget):
        """A mod 2 的阶为 2"""
        first = next(enumerate_quotients(shear_product, budget))
        assert (first.modulus, first.period) == (2, 2)
        assert first.label == "congruence(m=2, d=2)"

    def test_specs_sorted_by_size(self, cat_product):
        specs = congruence_specs(cat_product, 200)
        sizes = [s.nominal_size(2) for s in specs]
        assert sizes == sorted(sizes)
        assert all(s.nominal_size(2) <= 200 for s in specs)

    def test_multiplicative_order(self, cat_map):
        """cat map 模 2 的阶为 3，模 3 的阶为 4"""
        A = morphism_matrix(cat_map)
        assert multiplicative_order(A, 2, 10) == 3
        assert multiplicative_order(A, 3, 10) == 4
        assert multiplicative_order(A, 3, 3) is None

    def test_factor_is_homomorphism(self, cat_product):
        factor = QuotientFactor(cat_product, FiniteQuotientSpec(modulus=3, period=4))
        _assert_homomorphism(factor, cat_product)
        assert len(factor.elements()) == 9 * 4

    def test_period_must_kill_matrix(self, shear_product):
        with pytest.raises(GroupInputError):
            QuotientFactor(shear_product, FiniteQuotientSpec(modulus=2, period=1))


class TestGenericQuotients:
    def test_symmetric_images_satisfy_relations(self, shear_product):
        spec = next(generic_specs(shear_product, 3))
        assert spec.degree == 2
        _assert_homomorphism(QuotientFactor(shear_product, spec), shear_product)

    def test_fallback_follows_congruence(self, shear_product):
        budget = Budget(max_quotient_size=8, generic_quotient_fallback=True, generic_max_degree=2)
        labels = [spec.label for spec in enumerate_quotients(shear_product, budget)]
        assert labels[0] == "congruence(m=2, d=2)"
        assert len(labels) > 1
        assert all(label == "symmetric(k=2)" for label in labels[1:])

    def test_bad_permutations_rejected(self, shear_product):
        """E_2 ≠ 1 违反 T^{-1} E_1 T = E_1 E_2"""
        spec = FiniteQuotientSpec(permutations=((0, 1), (0, 1), (1, 0)))
        with pytest.raises(GroupInputError):
            QuotientFactor(shear_product, spec)


class TestPolycyclicCheck:
    def test_rank(self, shear_product):
        assert check_polycyclic(shear_product) == 2

    def test_free_group_rejected(self, f2):
        with pytest.raises(GroupInputError):
            check_polycyclic(f2)

    def test_non_invertible_matrix(self, z2, budget):
        doubling = matrix_morphism(z2, [[2, 0], [0, 2]])
        G = semidirect_product(z2, doubling, require_inverse=False)
        with pytest.raises(GroupInputError):
            next(enumerate_quotients(G, budget))

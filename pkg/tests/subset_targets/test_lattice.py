"""
整数格（Z^n 子群）测试
"""

import pytest

from group_kernel import integer_matrix as im
from subset_targets.lattice import LatticeSubgroup, bezout, echelon_with_transform, hermite_basis, left_kernel, xgcd


class TestBezout:
    def test_xgcd(self):
        g, x, y = xgcd(240, 46)
        assert g == 2
        assert 240 * x + 46 * y == 2

    def test_xgcd_negative(self):
        g, x, y = xgcd(-4, 6)
        assert g == 2
        assert -4 * x + 6 * y == 2

    @pytest.mark.parametrize("values", [(4, 6), (6, 10, 15), (0, 0, 5), (-3,)])
    def test_bezout(self, values):
        d, coefficients = bezout(values)
        assert d >= 0
        assert sum(c * v for c, v in zip(coefficients, values)) == d
        assert all(v % d == 0 for v in values)

    def test_bezout_all_zero(self):
        assert bezout((0, 0))[0] == 0


class TestHermiteBasis:
    def test_canonical_for_any_generating_set(self):
        first = LatticeSubgroup.from_generators([(2, 0), (0, 2), (2, 2)], 2)
        second = LatticeSubgroup.from_generators([(2, 2), (4, 2)], 2)
        assert first == second == LatticeSubgroup.scaled(2, 2)

    def test_upper_triangular_reduced(self):
        assert hermite_basis([(1, 1), (1, -1)], 2) == ((1, 1), (0, 2))

    def test_row_convention_with_transform(self):
        """上三角行约定：U·M = H，U 幺模，主元上方约化到 [0, 主元)"""
        M = im.as_matrix([(4, 6), (2, 3), (0, 5)])
        H, U, rank = echelon_with_transform(M)
        assert im.to_rows(im.mat_mul(U, M)) == im.to_rows(H)
        assert abs(im.determinant(U)) == 1
        assert rank == 2
        assert im.to_rows(H[:rank]) == ((2, 3), (0, 5))
        assert H[1, 0] == 0 and 0 <= H[0, 1] < H[1, 1]

    def test_zero_rows_dropped(self):
        assert hermite_basis([(0, 0)], 2) == ()

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            LatticeSubgroup.from_generators([(1, 2, 3)], 2)


class TestLatticeOperations:
    def test_contains_and_residue(self):
        L = LatticeSubgroup.from_generators([(1, 1), (1, -1)], 2)
        assert L.contains((2, 0))
        assert not L.contains((1, 0))
        assert L.residue((1, 0)) == L.residue((0, 1)), "同一陪集的余量应相同"

    def test_solve(self):
        L = LatticeSubgroup.from_generators([(1, 1), (0, 2)], 2)
        assert L.solve((3, 5)) == (3, 1)
        assert L.solve((1, 0)) is None

    def test_intersect(self):
        """2Z×Z ∩ Z×3Z = 2Z×3Z"""
        A = LatticeSubgroup.from_generators([(2, 0), (0, 1)], 2)
        B = LatticeSubgroup.from_generators([(1, 0), (0, 3)], 2)
        assert A.intersect(B) == LatticeSubgroup.from_generators([(2, 0), (0, 3)], 2)

    def test_intersect_with_trivial(self):
        A = LatticeSubgroup.full(2)
        assert A.intersect(LatticeSubgroup(dim=2)).rank == 0

    def test_sum_and_containment(self):
        A = LatticeSubgroup.from_generators([(2, 0)], 2)
        B = LatticeSubgroup.from_generators([(0, 3)], 2)
        total = A.sum(B)
        assert total.contains_lattice(A)
        assert total.contains_lattice(B)
        assert not A.contains_lattice(total)

    def test_image_under_matrix(self, cat_map):
        from group_kernel.kernel import morphism_matrix

        L = LatticeSubgroup.from_generators([(1, 0)], 2)
        assert L.image(morphism_matrix(cat_map)) == LatticeSubgroup.from_generators([(2, 1)], 2)

    def test_index_and_exponent(self):
        L = LatticeSubgroup.from_generators([(2, 0), (0, 3)], 2)
        assert L.index() == 6
        assert L.exponent() == 6
        assert LatticeSubgroup.scaled(3, 4).exponent() == 4
        assert LatticeSubgroup.from_generators([(1, 0)], 2).index() is None

    def test_left_kernel(self):
        rows = [(1, 2), (2, 4), (0, 1)]
        kernel = left_kernel(rows)
        assert len(kernel) == 1
        for lam in kernel:
            assert all(sum(c * row[j] for c, row in zip(lam, rows)) == 0 for j in range(2))

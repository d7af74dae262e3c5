"""
Betti 数, E1 / F1 维数表与 E-多项式检查
"""
import pytest
import sys
import os
from math import factorial

# 添加项目根目录到Python路径
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

try:
    from core.exceptions import OutOfRange
    from lie.lyndon import GradedAlphabet
    from lie.algebra import LieAlgebra
    from spectral.tables import (
        betti_m0n, compact_betti, stratum_epoly, e1_table, f1_table, stratification_epoly_check,
    )
except ImportError as e:
    print(f"导入模块失败: {e}")
    print(f"项目根目录: {project_root}")
    raise


class TestBetti:
    """M_{0,n} 的 Betti 数"""

    @pytest.mark.parametrize("n, expected", [
        (3, [1]),
        (4, [1, 2]),
        (5, [1, 5, 6]),
        (6, [1, 9, 26, 24]),
    ])
    def test_01_product_formula(self, n, expected):
        assert betti_m0n(n) == expected

    def test_02_compact_support_shift(self):
        assert compact_betti(4) == [0, 2, 1]
        assert compact_betti(3) == [1]

    @pytest.mark.parametrize("n", range(3, 8))
    def test_03_top_compact_degree_is_multilinear_lie(self, n):
        """dim H^{n-2}_c(M_{0,n+1}) = (n-1)! = 多线性 Lie 分量的维数"""
        top = compact_betti(n + 1)[n - 2]
        alpha = GradedAlphabet.parse(",".join(f"{x}:odd" for x in "abcdefg"[:n]))
        assert top == factorial(n - 1) == LieAlgebra(alpha).dimension((1,) * n)

    def test_04_out_of_range(self):
        with pytest.raises(OutOfRange):
            betti_m0n(13)

    def test_05_stratum_epoly(self):
        """E(M_{0,5}) = (x-2)(x-3)"""
        assert stratum_epoly((5,)).all_coeffs() == [1, -5, 6]
        assert stratum_epoly((3, 3)).all_coeffs() == [1]


class TestE1Table:
    """E1 页"""

    def test_01_four_points(self):
        """m = 4: (-1,1) = 3, (0,1) = 2, (0,2) = 1"""
        table = e1_table(4)
        assert table.nonzero_cells() == [(-1, 1), (0, 1), (0, 2)]
        assert table.dimension(-1, 1) == 3
        assert table.dimension(0, 1) == 2
        assert table.dimension(0, 2) == 1
        assert table.cells[(-1, 1)].strata_count == 3

    @pytest.mark.parametrize("m", [4, 5, 6, 7])
    def test_02_no_violations(self, m):
        assert e1_table(m).violations == []

    def test_03_row_sums_give_poincare(self):
        table = e1_table(5)
        assert [table.row_alternating_sum(2 + i) for i in range(3)] == [1, 5, 1]
        assert table.euler_characteristic() == 7

    def test_04_weight(self):
        table = e1_table(5)
        assert table.weight(0, 2) == 0
        assert table.weight(-2, 4) == 4

    def test_05_csv(self):
        lines = e1_table(4).to_csv().splitlines()
        assert lines[0] == "p,q,dim,strata"
        assert lines[1:] == ["-1,1,3,3", "0,1,2,1", "0,2,1,1"]

    @pytest.mark.parametrize("m", [3, 11])
    def test_06_out_of_range(self, m):
        with pytest.raises(OutOfRange):
            e1_table(m)


class TestF1Table:
    """只含好树的 F1 页"""

    @pytest.mark.parametrize("g", [2, 3])
    def test_01_bounds(self, g):
        """1-g <= p <= 0, 2g-1 <= q <= 4g-2, p+q >= g"""
        table = f1_table(g)
        assert table.violations == []
        assert table.nonzero_cells()
        assert table.dimension(-g, 2 * g - 1) == 0

    @pytest.mark.slow
    def test_02_genus_four(self):
        assert f1_table(4).violations == []

    def test_03_range(self):
        with pytest.raises(OutOfRange):
            f1_table(5)


class TestStratificationEPoly:
    """分层 E-多项式"""

    @pytest.mark.parametrize("m, expected", [(4, [1, 1]), (5, [1, 5, 1]), (6, [1, 16, 16, 1])])
    def test_01_known_values(self, m, expected):
        result = stratification_epoly_check(m)
        assert result.coefficients == expected
        assert result.holds, result.checks

    @pytest.mark.parametrize("m", [7, 8])
    def test_02_palindromic(self, m):
        result = stratification_epoly_check(m)
        assert result.holds, result.checks
        assert result.coefficients[0] == result.coefficients[-1] == 1
        assert len(result.coefficients) == m - 2

    def test_03_polynomial_text(self):
        assert stratification_epoly_check(5).polynomial_text() == "1 + 5q + q^2"

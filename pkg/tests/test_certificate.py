"""
V_{l,g}, 微分 d1 与非零性证书测试
"""
import pytest
import sys
import os

# 添加项目根目录到Python路径
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

try:
    from core.exceptions import OutOfRange, LevelZero, SpectralException, FailedCertificate
    from lie.algebra import LieVector
    from lie.oracle import oracle_component
    from lie.parser import parse_vector
    from spectral.certificate import (
        V_ALPHABET, VSpaceElement, inversions, v_basis, v_dimension, v_multidegree, omega, d1,
        verify_complex, verify_leading_terms, expected_leading, certify_nonvanishing,
    )
except ImportError as e:
    print(f"导入模块失败: {e}")
    print(f"项目根目录: {project_root}")
    raise


class TestVSpace:
    """V_{l,g} 的基与维数"""

    @pytest.mark.parametrize("g", range(2, 9))
    def test_01_top_level_is_one_dimensional(self, g):
        """dim V_{g,g} = 1, 由 omega_g = B(ab^g) 张成"""
        assert v_dimension(g, g) == 1
        (element,) = v_basis(g, g)
        assert element.vector == omega(g).vector
        assert omega(g).text() == "1·a" + "b" * g

    @pytest.mark.parametrize("l, g", [(0, 2), (1, 2), (2, 2), (1, 3), (2, 3), (3, 3)])
    def test_02_dimension_matches_oracle(self, l, g):
        rank, _ = oracle_component(V_ALPHABET, v_multidegree(l, g))
        assert rank == v_dimension(l, g)

    def test_03_inversions(self):
        assert inversions((0, 1, 1)) == 0
        assert inversions((0, 1, 0, 1)) == 1
        assert inversions((1, 1, 0)) == 2

    def test_04_element_validation(self):
        with pytest.raises(OutOfRange):
            VSpaceElement(1, 0, LieVector())
        with pytest.raises(OutOfRange):
            VSpaceElement(3, 4, LieVector())
        with pytest.raises(SpectralException):
            VSpaceElement(2, 2, LieVector.basis((0, 0, 0, 1)))

    def test_05_omega_range(self):
        with pytest.raises(OutOfRange):
            omega(1)


class TestDifferential:
    """d1: 第 i 个 b 替换为 [a,a], 符号 (-1)^(i-1)"""

    @pytest.mark.parametrize("g, expected", [(2, "2·aaab"), (3, "2·aabab")])
    def test_01_base_cases(self, g, expected):
        image = d1(omega(g))
        assert image.text() == expected
        assert image.l == g - 1
        assert image.multidegree == (3, g - 1)

    @pytest.mark.parametrize("g", [2, 3, 4])
    def test_02_d1_squared_zero(self, g):
        """整个复形 V_{g,g} -> ... -> V_{0,g} 上 d1∘d1 = 0"""
        assert verify_complex(g) == []

    @pytest.mark.slow
    @pytest.mark.parametrize("g", [5, 6])
    def test_03_d1_squared_zero_higher(self, g):
        assert verify_complex(g) == []

    def test_04_level_zero(self):
        with pytest.raises(LevelZero):
            d1(VSpaceElement(2, 0, LieVector()))

    def test_05_linearity(self):
        """d1 对 V_{l,g} 中元素线性"""
        basis = v_basis(2, 3)
        combined = VSpaceElement(3, 2, 2 * basis[0].vector - basis[-1].vector)
        expected = 2 * d1(basis[0]).vector - d1(basis[-1]).vector
        assert d1(combined).vector == expected

    def test_06_parsed_element(self):
        element = VSpaceElement(2, 2, parse_vector("1·abb", V_ALPHABET))
        assert d1(element).text() == "2·aaab"


class TestLeadingTerms:
    """d1(omega_g) 的首项"""

    @pytest.mark.parametrize("g", range(2, 8))
    def test_01_leading_terms(self, g):
        report = verify_leading_terms(g)
        assert report.holds, report.to_dict()
        assert report.actual == report.expected

    @pytest.mark.slow
    @pytest.mark.parametrize("g", [8, 9, 10])
    def test_02_leading_terms_high_genus(self, g):
        assert verify_leading_terms(g).holds

    def test_03_genus_five(self):
        """奇数 g: B(a^3 b^4) 系数 0, B(a^2 b a b^3) 系数 g-1 = 4"""
        assert expected_leading(5) == (0, 4)
        assert verify_leading_terms(5).actual == (0, 4)

    @pytest.mark.parametrize("g", [1, 11])
    def test_04_range(self, g):
        with pytest.raises(OutOfRange):
            verify_leading_terms(g)


class TestCertificate:
    """非零性证书"""

    @pytest.mark.parametrize("g", [2, 3, 4])
    def test_01_passes(self, g):
        certificate = certify_nonvanishing(g)
        assert certificate.passed
        assert [c.name for c in certificate.checks] == [
            "dim_V_gg_is_one", "d1_omega_nonzero", "d1_squared_zero",
            "target_stratum_good", "source_column_empty",
        ]

    @pytest.mark.slow
    @pytest.mark.parametrize("g", [5, 6, 7])
    def test_02_passes_high_genus(self, g):
        assert certify_nonvanishing(g).passed

    def test_03_to_dict(self):
        data = certify_nonvanishing(3).to_dict()
        assert data["format"] == 1
        assert data["genus"] == 3
        assert data["omega"] == "1·abbb"
        assert data["d1_omega"] == "2·aabab"
        assert data["d1_omega_terms"] == [{"word": "aabab", "square": False, "coefficient": "2"}]
        assert data["d1d1_zero"] is True
        assert data["good_stratum_check"] is True
        assert data["leading_terms"]["expected"] == [0, 2]
        assert data["passed"] is True

    def test_04_narrative(self):
        lines = certify_nonvanishing(2).narrative()
        assert lines[0] == "亏格 g = 2"
        assert any(line.startswith("结论") for line in lines)
        assert sum(1 for line in lines if line.startswith("[通过]")) == 5

    @pytest.mark.parametrize("g", [1, 11])
    def test_05_range(self, g):
        with pytest.raises(OutOfRange):
            certify_nonvanishing(g)

    def test_06_source_column_by_good_tree_levels(self, monkeypatch):
        """逐层生成好树给出源列为空的证据"""
        monkeypatch.setattr("spectral.certificate.MAX_EXHAUSTIVE_SOURCE_GENUS", 1)
        check = certify_nonvanishing(3).checks[-1]
        assert check.name == "source_column_empty"
        assert check.passed
        assert check.witness == "逐层生成好树: Γ(0,8) 中好树至多 2 条边"

    def test_07_source_column_violation_fails(self, monkeypatch):
        """好树边数达到 g 时证书失败"""
        monkeypatch.setattr("spectral.certificate.MAX_EXHAUSTIVE_SOURCE_GENUS", 1)
        monkeypatch.setattr("spectral.certificate.max_good_edges", lambda n: (n - 2) // 2)
        with pytest.raises(FailedCertificate) as info:
            certify_nonvanishing(3)
        failed = [c.name for c in info.value.certificate.checks if not c.passed]
        assert failed == ["source_column_empty"]

    @pytest.mark.slow
    def test_08_source_column_genus_six(self):
        """g=6 超出穷举范围, 好树至多 5 条边"""
        check = certify_nonvanishing(6).checks[-1]
        assert check.passed
        assert check.witness == "逐层生成好树: Γ(0,14) 中好树至多 5 条边"

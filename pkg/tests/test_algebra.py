"""
自由 Lie 超代数: 规范化, 括号与基测试
"""
import pytest
import sys
import os
from fractions import Fraction
from itertools import combinations

# 添加项目根目录到Python路径
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

try:
    from core.exceptions import MixedMultidegree, LieException
    from lie.lyndon import GradedAlphabet, Atom, Bracket, lyndon_words, standard_bracketing
    from lie.algebra import LieVector, LieAlgebra, dimension, normalize, bracket
    from lie.parser import parse_bracket, format_vector
except ImportError as e:
    print(f"导入模块失败: {e}")
    print(f"项目根目录: {project_root}")
    raise

A, B, C = Atom(0), Atom(1), Atom(2)

# 用于 Jacobi 与反对称性的表达式
SAMPLES = [A, B, C, Bracket(A, B), Bracket(A, C), Bracket(B, C), Bracket(A, Bracket(A, B))]


def _small_lyndon(alpha, max_length):
    words = []
    for length in range(1, max_length + 1):
        for i in range(length + 1):
            words += lyndon_words(alpha, (i, length - i))
    return sorted(words)


class TestLieVector:
    """稀疏向量运算"""

    def test_01_zero_terms_dropped(self):
        v = LieVector({((0, 1), False): 0, ((0,), True): Fraction(1, 2)})
        assert len(v) == 1
        assert v.coefficient((0,), square=True) == Fraction(1, 2)
        assert not v.is_integral()

    def test_02_arithmetic(self):
        x = LieVector.basis((0, 1))
        y = LieVector.basis((0, 0, 1), coef=3)
        assert (x + y) - y == x
        assert not (x - x)
        assert 2 * x == x + x
        assert -x == LieVector.basis((0, 1), coef=-1)

    def test_03_multidegree(self, ab_alphabet):
        v = LieVector.basis((0, 1)) + LieVector.basis((0,), square=False)
        with pytest.raises(MixedMultidegree):
            v.multidegree(ab_alphabet)
        assert LieVector.basis((0,), square=True).multidegree(ab_alphabet) == (2, 0)
        assert LieVector().multidegree(ab_alphabet) is None


class TestNormalize:
    """括号表达式的 Lyndon 基展开"""

    @pytest.mark.parametrize("expr, expected", [
        ("[a,b]", "1·ab"),
        ("[b,a]", "-1·ab"),
        ("[a,a]", "1·(a)^[2]"),
        ("[b,b]", "0"),
        ("[a,[a,b]]", "1·aab"),
        ("[[a,b],a]", "1·aab"),
        ("[[a,b],[a,b]]", "1·(ab)^[2]"),
        ("[[a,[a,b]],[a,b]]", "1·aabab"),
        ("[[a,a],[a,b]]", "2·aaab"),
        ("[[a,b],[a,a]]", "-2·aaab"),
        ("[a,[a,a]]", "0"),
    ])
    def test_01_examples(self, ab_algebra, ab_alphabet, expr, expected):
        vector = ab_algebra.normalize(parse_bracket(expr, ab_alphabet))
        assert format_vector(vector, ab_alphabet) == expected

    def test_02_idempotent_on_basis(self, ab_algebra, ab_alphabet):
        """基元素规范化后仍是自身, 系数为1"""
        for word in _small_lyndon(ab_alphabet, 6):
            assert ab_algebra.normalize(standard_bracketing(word)) == LieVector.basis(word)

    @pytest.mark.parametrize("x, y", list(combinations(SAMPLES, 2)) + [(s, s) for s in SAMPLES])
    def test_03_super_antisymmetry(self, mixed_algebra, mixed_alphabet, x, y):
        """N[x,y] + ε(x,y) N[y,x] = 0"""
        sign = mixed_alphabet.commutation_sign(mixed_algebra.expr_multidegree(x), mixed_algebra.expr_multidegree(y))
        total = mixed_algebra.normalize(Bracket(x, y)) + sign * mixed_algebra.normalize(Bracket(y, x))
        assert not total

    @pytest.mark.parametrize("x, y, z", list(combinations(SAMPLES, 3)) + [(A, A, A), (A, A, B), (B, A, A)])
    def test_04_super_jacobi(self, mixed_algebra, mixed_alphabet, x, y, z):
        """ε(z,x)[x,[y,z]] + ε(x,y)[y,[z,x]] + ε(y,z)[z,[x,y]] = 0"""
        md = mixed_algebra.expr_multidegree
        eps = mixed_alphabet.commutation_sign
        combination = [
            (eps(md(z), md(x)), Bracket(x, Bracket(y, z))),
            (eps(md(x), md(y)), Bracket(y, Bracket(z, x))),
            (eps(md(y), md(z)), Bracket(z, Bracket(x, y))),
        ]
        assert not mixed_algebra.normalize(combination)

    def test_05_mixed_combination(self, ab_algebra):
        with pytest.raises(MixedMultidegree):
            ab_algebra.normalize([(1, Bracket(A, B)), (1, Bracket(A, A))])

    def test_06_linear_combination(self, ab_algebra):
        """2[a,b] - [b,a] = 3 B(ab)"""
        vector = ab_algebra.normalize([(2, Bracket(A, B)), (-1, Bracket(B, A))])
        assert vector == LieVector.basis((0, 1), coef=3)

    def test_07_module_functions(self, ab_alphabet):
        assert normalize(ab_alphabet, Bracket(B, A)) == LieVector.basis((0, 1), coef=-1)
        assert dimension(ab_alphabet, (3, 2)) == 2

    def test_08_not_lie_polynomial(self, ab_algebra):
        """单个词 ab 不是 Lie 元素"""
        with pytest.raises(LieException):
            ab_algebra.decompose({(0, 1): Fraction(1)})


class TestBracket:
    """基元素之间的括号"""

    def test_01_simple(self, ab_algebra, ab_alphabet):
        result = bracket(ab_alphabet, LieVector.basis((0,)), LieVector.basis((0, 1)))
        assert result == LieVector.basis((0, 0, 1))
        assert not ab_algebra.bracket(LieVector(), LieVector.basis((0,)))

    def test_02_triangularity(self, ab_algebra, ab_alphabet):
        """m < n 为 Lyndon 词: [B(m),B(n)] = B(mn) + 更大的项"""
        words = _small_lyndon(ab_alphabet, 3)
        for m, n in combinations(words, 2):
            result = ab_algebra.bracket(LieVector.basis(m), LieVector.basis(n))
            assert result.coefficient(m + n) == 1
            for word, square in result.keys():
                leading = word * 2 if square else word
                assert leading >= m + n

    def test_03_square_of_odd_element(self, ab_algebra):
        """奇元素 ab 与自身的括号是平方基元素"""
        x = LieVector.basis((0, 1))
        assert ab_algebra.bracket(x, x) == LieVector.basis((0, 1), square=True)


class TestDimensions:
    """多重次数分量的维数"""

    @pytest.mark.parametrize("degree, expected", [
        ((1, 0), 1), ((0, 1), 1), ((2, 0), 1), ((0, 2), 0), ((1, 1), 1),
        ((2, 1), 1), ((2, 2), 2), ((3, 1), 1), ((3, 2), 2), ((1, 2), 1),
    ])
    def test_01_ab_dimensions(self, ab_algebra, degree, expected):
        assert ab_algebra.dimension(degree) == expected

    @pytest.mark.parametrize("n", range(1, 7))
    def test_02_multilinear(self, n):
        """n 个不同奇字母的多线性分量维数为 (n-1)!"""
        from math import factorial
        alpha = GradedAlphabet.parse(",".join(f"{x}:odd" for x in "abcdef"[:n]))
        assert LieAlgebra(alpha).dimension((1,) * n) == factorial(n - 1)

    def test_03_basis_sorted(self, ab_algebra):
        keys = ab_algebra.basis((2, 2))
        assert keys == [((0, 0, 1, 1), False), ((0, 1), True)]

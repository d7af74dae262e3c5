"""
分次字母表, Lyndon 词与标准括号化测试
"""
import pytest
import sys
import os
from itertools import product

# 添加项目根目录到Python路径
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

try:
    from core.exceptions import LieException, NotLyndon, ParseError
    from lie.lyndon import (
        GradedAlphabet, Atom, Bracket, foliage, format_expr, duval, is_lyndon, lyndon_words,
        standard_factorization, standard_bracketing,
    )
except ImportError as e:
    print(f"导入模块失败: {e}")
    print(f"项目根目录: {project_root}")
    raise


class TestGradedAlphabet:
    """字母表解析与交换符号"""

    def test_01_parse(self, ab_alphabet):
        assert ab_alphabet.letters == ("a", "b")
        assert ab_alphabet.degrees == (1, 0)
        assert ab_alphabet.weights == (0, 0)
        assert ab_alphabet.spec() == "a:odd,b:even"

    @pytest.mark.parametrize("text", ["a:odd,b", "a:strange", "ab:odd", ":odd"])
    def test_02_parse_errors(self, text):
        with pytest.raises((ParseError, LieException)):
            GradedAlphabet.parse(text)

    def test_03_duplicate_letters(self):
        with pytest.raises(LieException):
            GradedAlphabet.parse("a:odd,a:even")

    def test_04_words(self, ab_alphabet):
        assert ab_alphabet.word("aab") == (0, 0, 1)
        assert ab_alphabet.format_word((0, 1, 1)) == "abb"
        assert ab_alphabet.multidegree((0, 1, 0)) == (2, 1)
        with pytest.raises(LieException):
            ab_alphabet.word("abc")

    @pytest.mark.parametrize("x, y, expected", [
        ((1, 0), (1, 0), -1),
        ((1, 0), (0, 1), 1),
        ((2, 1), (1, 0), 1),
        ((1, 1), (1, 2), -1),
    ])
    def test_05_commutation_sign(self, ab_alphabet, x, y, expected):
        """ε(x,y) = (-1)^(|x||y|)"""
        assert ab_alphabet.commutation_sign(x, y) == expected

    def test_06_weighted_sign(self):
        """带权字母 b: ε(b,b) = -1"""
        alpha = GradedAlphabet.parse("a:odd,b:even", weighted=("b",))
        assert alpha.weights == (0, 1)
        assert alpha.commutation_sign((0, 1), (0, 1)) == -1
        assert alpha.commutation_sign((1, 0), (0, 1)) == 1

    def test_07_multidegree_vector(self, ab_alphabet):
        assert ab_alphabet.multidegree_vector("3,2") == (3, 2)
        for text in ("3", "3,x", "3,-1"):
            with pytest.raises(ParseError):
                ab_alphabet.multidegree_vector(text)


class TestLyndonWords:
    """Lyndon 词判定与生成"""

    @pytest.mark.parametrize("word, expected", [
        ("a", True), ("ab", True), ("aab", True), ("abb", True), ("aabab", True),
        ("ba", False), ("aba", False), ("abab", False), ("aa", False),
    ])
    def test_01_is_lyndon(self, ab_alphabet, word, expected):
        assert is_lyndon(ab_alphabet.word(word)) == expected

    def test_02_duval_factorization(self, ab_alphabet):
        """babaab = b · ab · aab"""
        factors = duval(ab_alphabet.word("babaab"))
        assert [ab_alphabet.format_word(f) for f in factors] == ["b", "ab", "aab"]

    @pytest.mark.parametrize("degree, expected", [
        ((3, 1), ["aaab"]),
        ((2, 2), ["aabb"]),
        ((3, 2), ["aaabb", "aabab"]),
        ((1, 1), ["ab"]),
        ((2, 0), []),
        ((1, 0), ["a"]),
    ])
    def test_03_generation(self, ab_alphabet, degree, expected):
        words = lyndon_words(ab_alphabet, degree)
        assert [ab_alphabet.format_word(w) for w in words] == expected

    @pytest.mark.parametrize("length", range(1, 9))
    def test_04_generation_matches_filter(self, ab_alphabet, length):
        """按计数生成与按 is_lyndon 过滤全部词一致"""
        for i in range(length + 1):
            expected = sorted(w for w in product(range(2), repeat=length)
                              if w.count(0) == i and is_lyndon(w))
            assert lyndon_words(ab_alphabet, (i, length - i)) == expected

    def test_05_three_letters(self, mixed_alphabet):
        words = lyndon_words(mixed_alphabet, (1, 1, 1))
        assert [mixed_alphabet.format_word(w) for w in words] == ["abc", "acb"]


class TestStandardBracketing:
    """标准分解与括号化"""

    @pytest.mark.parametrize("word, left, right", [
        ("ab", "a", "b"),
        ("aab", "a", "ab"),
        ("abb", "ab", "b"),
        ("aabab", "aab", "ab"),
        ("aaabb", "a", "aabb"),
    ])
    def test_01_factorization(self, ab_alphabet, word, left, right):
        u, v = standard_factorization(ab_alphabet.word(word))
        assert (ab_alphabet.format_word(u), ab_alphabet.format_word(v)) == (left, right)

    @pytest.mark.parametrize("word, expected", [
        ("a", "a"),
        ("aab", "[a,[a,b]]"),
        ("aabab", "[[a,[a,b]],[a,b]]"),
        ("abbb", "[[[a,b],b],b]"),
    ])
    def test_02_bracketing(self, ab_alphabet, word, expected):
        expr = standard_bracketing(ab_alphabet.word(word))
        assert format_expr(expr, ab_alphabet) == expected
        assert foliage(expr) == ab_alphabet.word(word)

    @pytest.mark.parametrize("word", ["ba", "abab", "aa"])
    def test_03_not_lyndon(self, ab_alphabet, word):
        with pytest.raises(NotLyndon):
            standard_bracketing(ab_alphabet.word(word))

    def test_04_expression_values(self):
        expr = Bracket(Atom(0), Bracket(Atom(0), Atom(1)))
        assert foliage(expr) == (0, 0, 1)

"""
自由 Lie 超代数: 在自由结合代数中展开括号, 再按 Lyndon 基 (含奇平方) 分解
"""
from fractions import Fraction

from core.logger_config import logger
from core.exceptions import LieException, MixedMultidegree
from lie.lyndon import Atom, Bracket, foliage, is_lyndon, lyndon_words, standard_bracketing


class LieVector:
    """Lyndon 基元素的稀疏有理线性组合

    键为 (word, False) 表示 B(w), (word, True) 表示 [B(w), B(w)]。不存储零系数。
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        cleaned = {}
        for key, coef in (terms or {}).items():
            coef = Fraction(coef)
            if coef:
                cleaned[(tuple(key[0]), bool(key[1]))] = coef
        self._terms = cleaned

    @classmethod
    def basis(cls, word, square=False, coef=1):
        return cls({(tuple(word), square): coef})

    def items(self):
        return sorted(self._terms.items())

    def keys(self):
        return sorted(self._terms)

    def coefficient(self, word, square=False):
        return self._terms.get((tuple(word), square), Fraction(0))

    def multidegree(self, alpha):
        degrees = {alpha.multidegree(word * (2 if square else 1)) for word, square in self._terms}
        if len(degrees) > 1:
            raise MixedMultidegree(f"向量的多重次数不齐次: {sorted(degrees)}")
        return degrees.pop() if degrees else None

    def is_integral(self):
        return all(coef.denominator == 1 for coef in self._terms.values())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        return isinstance(other, LieVector) and self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self.items()))

    def __add__(self, other):
        terms = dict(self._terms)
        for key, coef in other._terms.items():
            terms[key] = terms.get(key, 0) + coef
        return LieVector(terms)

    def __neg__(self):
        return LieVector({key: -coef for key, coef in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, scale):
        return LieVector({key: scale * coef for key, coef in self._terms.items()})

    def __repr__(self):
        return f"LieVector({self.items()})"


def _add_into(target, poly, scale=1):
    for word, coef in poly.items():
        value = target.get(word, 0) + scale * coef
        if value:
            target[word] = value
        else:
            target.pop(word, None)


def _product(p, q):
    result = {}
    for u, cu in p.items():
        for v, cv in q.items():
            word = u + v
            value = result.get(word, 0) + cu * cv
            if value:
                result[word] = value
            else:
                result.pop(word, None)
    return result


class LieAlgebra:
    """字母表 alpha 上的自由 Lie 超代数 (交换因子 ε 见 GradedAlphabet)

    基元素在结合代数中的展开会被缓存, 缓存只保存纯函数结果。
    """

    def __init__(self, alpha):
        self.alpha = alpha
        self._basis_poly = {}

    # ---------- 结合代数展开 ----------
    def expr_multidegree(self, expr):
        return self.alpha.multidegree(foliage(expr))

    def expr_poly(self, expr):
        """[x,y] = xy - ε(x,y) yx"""
        if isinstance(expr, Atom):
            return {(expr.letter,): Fraction(1)}
        if not isinstance(expr, Bracket):
            raise LieException(f"不是括号表达式: {expr!r}")
        left, right = self.expr_poly(expr.left), self.expr_poly(expr.right)
        sign = self.alpha.commutation_sign(self.expr_multidegree(expr.left), self.expr_multidegree(expr.right))
        result = _product(left, right)
        _add_into(result, _product(right, left), -sign)
        return result

    def basis_poly(self, key):
        word, square = key
        if key not in self._basis_poly:
            if square:
                single = self.basis_poly((word, False))
                md = self.alpha.multidegree(word)
                poly = _product(single, single)
                _add_into(poly, _product(single, single), -self.alpha.commutation_sign(md, md))
            else:
                poly = self.expr_poly(standard_bracketing(word))
            self._basis_poly[key] = poly
        return self._basis_poly[key]

    def vector_poly(self, vector):
        result = {}
        for key, coef in vector.items():
            _add_into(result, self.basis_poly(key), coef)
        return result

    def _square_root(self, word):
        """word = uu 且 u 为 ε(u,u) = -1 的 Lyndon 词时返回 u"""
        half, rem = divmod(len(word), 2)
        if rem or word[:half] != word[half:] or not is_lyndon(word[:half]):
            return None
        md = self.alpha.multidegree(word[:half])
        return word[:half] if self.alpha.commutation_sign(md, md) == -1 else None

    def decompose(self, poly):
        """按最小词逐项消去, 把 Lie 多项式写成 Lyndon 基的组合"""
        poly = dict(poly)
        terms = {}
        while poly:
            word = min(poly)
            coef = poly[word]
            if is_lyndon(word):
                key, lead = (word, False), 1
            else:
                root = self._square_root(word)
                if root is None:
                    logger.error(f"多项式不在 Lie 子代数中, 最小词 {word}")
                    raise LieException(f"多项式不是 Lie 元素: 最小词 {self.alpha.format_word(word)} 不是基的首项")
                key, lead = (root, True), 2
            scale = coef / lead
            terms[key] = terms.get(key, 0) + scale
            _add_into(poly, self.basis_poly(key), -scale)
        return LieVector(terms)

    # ---------- 公共运算 ----------
    def normalize(self, expr):
        """括号表达式或 [(系数, 表达式), ...] 的 Lyndon 基展开"""
        if isinstance(expr, (Atom, Bracket)):
            return self.decompose(self.expr_poly(expr))
        combination = list(expr)
        degrees = {self.expr_multidegree(e) for _, e in combination}
        if len(degrees) > 1:
            logger.error(f"线性组合的多重次数不一致: {sorted(degrees)}")
            raise MixedMultidegree(f"线性组合的多重次数不一致: {sorted(degrees)}")
        poly = {}
        for coef, e in combination:
            _add_into(poly, self.expr_poly(e), Fraction(coef))
        return self.decompose(poly)

    def bracket(self, x, y):
        """双线性扩张的括号 [x, y]"""
        if not x or not y:
            return LieVector()
        px, py = self.vector_poly(x), self.vector_poly(y)
        sign = self.alpha.commutation_sign(x.multidegree(self.alpha), y.multidegree(self.alpha))
        poly = _product(px, py)
        _add_into(poly, _product(py, px), -sign)
        return self.decompose(poly)

    def basis(self, multidegree):
        """多重次数分量的基键: Lyndon 词及适用的平方, 按键排序"""
        keys = [(word, False) for word in lyndon_words(self.alpha, multidegree)]
        if all(c % 2 == 0 for c in multidegree) and any(multidegree):
            half = tuple(c // 2 for c in multidegree)
            for word in lyndon_words(self.alpha, half):
                if self.alpha.commutation_sign(half, half) == -1:
                    keys.append((word, True))
        return sorted(keys)

    def dimension(self, multidegree):
        return len(self.basis(multidegree))


def dimension(alpha, multidegree):
    """Lie 分量 Lie_multidegree 的维数"""
    return LieAlgebra(alpha).dimension(multidegree)


def normalize(alpha, expr):
    return LieAlgebra(alpha).normalize(expr)


def bracket(alpha, x, y):
    return LieAlgebra(alpha).bracket(x, y)

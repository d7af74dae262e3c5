"""
暴力线性代数 oracle: 所有完全括号化在自由结合代数中张成的空间, 精确行约化
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from config import MAX_ORACLE_LETTERS
from core.logger_config import logger
from core.exceptions import TooLarge
from lie.algebra import LieAlgebra, _add_into, _product


def _row_reduce(polys):
    """返回 (秩, 约化后的行多项式, 主元词)"""
    columns = sorted({word for poly in polys for word in poly})
    if not polys or not columns:
        return 0, [], []
    index = {word: j for j, word in enumerate(columns)}
    rows = []
    for poly in polys:
        row = [QQ(0)] * len(columns)
        for word, coef in poly.items():
            coef = Fraction(coef)
            row[index[word]] = QQ(coef.numerator, coef.denominator)
        rows.append(row)
    matrix = DomainMatrix(rows, (len(rows), len(columns)), QQ)
    reduced, pivots = matrix.rref()
    dense = reduced.to_Matrix()
    basis = []
    for i in range(len(pivots)):
        basis.append({columns[j]: Fraction(int(dense[i, j].p), int(dense[i, j].q))
                      for j in range(len(columns)) if dense[i, j] != 0})
    return len(pivots), basis, [columns[j] for j in pivots]


@dataclass(frozen=True)
class OracleComponent:
    """一个多重次数分量的秩与约化基"""
    multidegree: tuple
    rank: int
    rows: tuple
    pivots: tuple

    def reduce(self, poly):
        """用约化基消去主元, 返回余项"""
        rest = dict(poly)
        for row, pivot in zip(self.rows, self.pivots):
            coef = rest.get(pivot)
            if coef:
                _add_into(rest, row, -coef)
        return rest

    def contains(self, poly):
        return not self.reduce(poly)


class BracketOracle:
    """按多重次数递归: Lie_d 由 [x, y] 张成, x, y 取遍 Lie_d1, Lie_d2 的约化基"""

    def __init__(self, alpha):
        self.alpha = alpha
        self._component = lru_cache(maxsize=None)(self._build)

    def _build(self, multidegree):
        total = sum(multidegree)
        if total == 0:
            return OracleComponent(multidegree, 0, (), ())
        if total == 1:
            letter = multidegree.index(1)
            return OracleComponent(multidegree, 1, ({(letter,): Fraction(1)},), ((letter,),))
        polys = []
        for left in product(*(range(c + 1) for c in multidegree)):
            right = tuple(c - x for c, x in zip(multidegree, left))
            if not any(left) or not any(right):
                continue
            sign = self.alpha.commutation_sign(left, right)
            for x in self.component(left).rows:
                for y in self.component(right).rows:
                    poly = _product(x, y)
                    _add_into(poly, _product(y, x), -sign)
                    if poly:
                        polys.append(poly)
        rank, rows, pivots = _row_reduce(polys)
        return OracleComponent(multidegree, rank, tuple(rows), tuple(pivots))

    def component(self, multidegree):
        return self._component(tuple(multidegree))


def oracle_component(alpha, multidegree):
    """返回 (维数, 成员判定函数)"""
    total = sum(multidegree)
    if total > MAX_ORACLE_LETTERS:
        logger.error(f"oracle 规模过大: 共 {total} 个字母")
        raise TooLarge(f"oracle 只支持总字母数 <= {MAX_ORACLE_LETTERS}, 实际 {total}")
    component = BracketOracle(alpha).component(multidegree)
    algebra = LieAlgebra(alpha)

    def member(item):
        """item 可以是 LieVector 或结合代数中的多项式"""
        poly = item if isinstance(item, dict) else algebra.vector_poly(item)
        return component.contains(poly)

    logger.debug(f"oracle 分量 {multidegree}: 秩 {component.rank}")
    return component.rank, member

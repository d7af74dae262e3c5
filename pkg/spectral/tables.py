"""
E1 / F1 页的维数表, M_{0,n} 的 Betti 数, 分层 E-多项式检查
"""
import csv
import io
from dataclasses import dataclass, field

from sympy import Poly, symbols, prod

from config import E1_RANGE, F1_RANGE, EPOLY_RANGE, BETTI_RANGE
from core.logger_config import logger
from core.exceptions import OutOfRange
from strata.trees import enumerate_orbit_classes, is_good

t, x = symbols("t x")

# M̄_{0,4} = P^1, M̄_{0,5} 为5次 del Pezzo 曲面, M̄_{0,6} 的 Betti 数为 1,16,16,1
KNOWN_POINCARE = {4: [1, 1], 5: [1, 5, 1], 6: [1, 16, 16, 1]}


def _check(value, bounds, what):
    low, high = bounds
    if not low <= value <= high:
        logger.error(f"{what}={value} 超出范围 [{low}, {high}]")
        raise OutOfRange(f"{what}={value} 超出支持范围 [{low}, {high}]")


def _coefficients(poly, variable):
    """升幂系数列表"""
    return [int(c) for c in reversed(Poly(poly, variable).all_coeffs())]


def betti_m0n(n):
    """dim H^j(M_{0,n}), 来自 ∏_{k=2}^{n-2} (1 + k t) 的系数"""
    _check(n, BETTI_RANGE, "n")
    return _coefficients(prod([1 + k * t for k in range(2, n - 1)]) + 0 * t, t)


def compact_betti(k):
    """dim H^j_c(M_{0,k}) = dim H^{2(k-3)-j}(M_{0,k}), j = 0..2(k-3)"""
    betti = betti_m0n(k)
    top = 2 * (k - 3)
    return [betti[top - j] if 0 <= top - j < len(betti) else 0 for j in range(top + 1)]


def stratum_compact_poincare(flag_counts):
    """∏_v P_c(M_{0,|F(v)|})(t)"""
    result = Poly(1, t)
    for k in flag_counts:
        result *= Poly(list(reversed(compact_betti(k))), t)
    return result


def stratum_epoly(flag_counts):
    """E(M_T)(x) = ∏_v ∏_{j=2}^{k-2} (x - j)"""
    return Poly(prod([x - j for k in flag_counts for j in range(2, k - 1)]) + 0 * x, x)


@dataclass
class TableCell:
    """一个 (p,q) 格: 维数与贡献它的分层"""
    dimension: int = 0
    strata: list = field(default_factory=list)

    @property
    def strata_count(self):
        """贡献的数值树分层个数"""
        return sum(cls.orbit_size for cls, _ in self.strata)


@dataclass
class SpectralTable:
    """E 或 F 页的维数表; index 对 E 为 m, 对 F 为 g"""
    kind: str
    index: int
    cells: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def leaf_count(self):
        return self.index if self.kind == "E" else 2 * self.index + 2

    def dimension(self, p, q):
        cell = self.cells.get((p, q))
        return cell.dimension if cell else 0

    def weight(self, p, q):
        """H^{p+q}_c(M_T) 纯权为 2q - 2(m-3)"""
        return 2 * q - 2 * (self.leaf_count - 3)

    def nonzero_cells(self):
        return sorted((pq for pq, cell in self.cells.items() if cell.dimension), key=lambda pq: (pq[1], pq[0]))

    def row_alternating_sum(self, q):
        return sum((-1) ** (p + qq) * cell.dimension for (p, qq), cell in self.cells.items() if qq == q)

    def euler_characteristic(self):
        return sum((-1) ** (p + q) * cell.dimension for (p, q), cell in self.cells.items())

    def to_rows(self):
        return [{"p": p, "q": q, "dim": self.cells[(p, q)].dimension,
                 "strata": self.cells[(p, q)].strata_count}
                for p, q in sorted(self.cells)]

    def to_csv(self):
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=["p", "q", "dim", "strata"], lineterminator="\n")
        writer.writeheader()
        writer.writerows(self.to_rows())
        return buffer.getvalue()


def _fill(table, classes):
    for cls in classes:
        p = -cls.edge_count
        coefficients = _coefficients(stratum_compact_poincare(cls.vertex_flag_counts()).as_expr() + 0 * t, t)
        for degree, dim in enumerate(coefficients):
            if not dim:
                continue
            cell = table.cells.setdefault((p, degree - p), TableCell())
            cell.dimension += cls.orbit_size * dim
            cell.strata.append((cls, dim))
    return table


def e1_table(m, jobs=None):
    """E1^{p,q} = ⊕_{T ∈ Γ_{-p}(0,m)} H^{p+q}_c(M_T)"""
    _check(m, E1_RANGE, "m")
    logger.info(f"计算 E1 页, m={m}")
    table = _fill(SpectralTable("E", m), enumerate_orbit_classes(m, jobs=jobs))
    bound = 2 * (m - 3)
    for p, q in table.nonzero_cells():
        if q - p > bound:
            table.violations.append(f"E1 格 ({p},{q}) 超过 q-p <= {bound}")
    return table


def f1_table(g, jobs=None):
    """F1^{p,q}: 只对好树求和, 并检查 1-g <= p <= 0, 2g-1 <= q <= 4g-2, p+q >= g"""
    _check(g, F1_RANGE, "g")
    logger.info(f"计算 F1 页, g={g}")
    good = [cls for cls in enumerate_orbit_classes(2 * g + 2, jobs=jobs) if is_good(cls.annotation)]
    table = _fill(SpectralTable("F", g), good)
    for p, q in table.nonzero_cells():
        if not (1 - g <= p <= 0 and 2 * g - 1 <= q <= 4 * g - 2):
            table.violations.append(f"F1 格 ({p},{q}) 落在边界框之外")
        if p + q < g:
            table.violations.append(f"F1 格 ({p},{q}) 满足 p+q < g")
    if table.violations:
        logger.error(f"F1 页 g={g} 边界检查失败: {table.violations}")
    return table


@dataclass
class EPolyCheck:
    """分层 E-多项式检查的结果"""
    m: int
    coefficients: list
    checks: dict = field(default_factory=dict)

    @property
    def holds(self):
        return all(self.checks.values())

    def polynomial_text(self):
        terms = []
        for i, c in enumerate(self.coefficients):
            if c:
                terms.append(str(c) if i == 0 else f"{'' if c == 1 else c}q" + (f"^{i}" if i > 1 else ""))
        return " + ".join(terms) or "0"


def stratification_epoly_check(m, jobs=None):
    """Σ_T ∏_v E(M_{0,|F(v)|}) 应为 M̄_{0,m} 的 Poincaré 多项式 (变量 q 对应 H^2)"""
    _check(m, EPOLY_RANGE, "m")
    classes = enumerate_orbit_classes(m, jobs=jobs)
    total = Poly(0, x)
    for cls in classes:
        total += cls.orbit_size * stratum_epoly(cls.vertex_flag_counts())
    coefficients = _coefficients(total.as_expr() + 0 * x, x)
    coefficients += [0] * (m - 2 - len(coefficients))

    table = _fill(SpectralTable("E", m), classes)
    rows = [table.row_alternating_sum(m - 3 + i) for i in range(m - 2)]

    check = EPolyCheck(m, coefficients)
    check.checks["nonnegative"] = all(c >= 0 for c in coefficients)
    check.checks["palindromic"] = coefficients == coefficients[::-1]
    check.checks["degree"] = len(coefficients) == m - 2 and coefficients[-1] != 0
    check.checks["constant_term"] = coefficients[0] == 1
    check.checks["e1_rows"] = rows == coefficients
    check.checks["euler_characteristic"] = table.euler_characteristic() == sum(coefficients)
    if m in KNOWN_POINCARE:
        check.checks["known_value"] = coefficients == KNOWN_POINCARE[m]
    if check.holds:
        logger.info(f"m={m} 的 E-多项式检查通过: {check.polynomial_text()}")
    else:
        logger.error(f"m={m} 的 E-多项式检查失败: {check.checks}")
    return check

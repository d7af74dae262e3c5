"""
空间 V_{l,g}, 微分 d1, 首项检查与非零性证书

V_{l,g} 是字母表 {a 奇, b 偶} 上多重次数 (2g-2l+1, l) 的 Lie 分量。括号在带权的
交换因子下展开 (b 另带一个奇权重), 此时 b -> [a,a] 的逐次替换是真正的导子, d1∘d1 = 0。
基向量取定向形式 E(w) = (-1)^inv(w) B(w), inv(w) 为 b 出现在 a 之前的对数。
"""
from dataclasses import dataclass, field

from config import (
    FORMAT_VERSION, MIN_CERTIFICATE_GENUS, MAX_CERTIFICATE_GENUS, MAX_EXHAUSTIVE_SOURCE_GENUS,
    V_ALPHABET_SPEC, V_WEIGHTED_LETTERS,
)
from core.logger_config import logger
from core.exceptions import OutOfRange, LevelZero, SpectralException, FailedCertificate
from lie.lyndon import GradedAlphabet, Atom, Bracket, standard_bracketing
from lie.algebra import LieAlgebra, LieVector, _add_into
from lie.parser import format_vector, format_terms
from strata.trees import build_T_lg, is_good, enumerate_orbit_classes, max_good_edges

V_ALPHABET = GradedAlphabet.parse(V_ALPHABET_SPEC, weighted=V_WEIGHTED_LETTERS)
V_ALGEBRA = LieAlgebra(V_ALPHABET)
A, B = V_ALPHABET.index("a"), V_ALPHABET.index("b")


def v_multidegree(l, g):
    return 2 * g - 2 * l + 1, l


def inversions(word):
    """b 在 a 之前的对数"""
    count, seen_b = 0, 0
    for letter in word:
        if letter == B:
            seen_b += 1
        else:
            count += seen_b
    return count


def _orient(vector):
    """E 坐标与 B 坐标互换 (该变换是对合)"""
    return LieVector({key: (-1) ** inversions(key[0]) * coef for key, coef in vector.items()})


@dataclass(frozen=True)
class VSpaceElement:
    """V_{l,g} 中的元素, vector 为定向基 E(w) 下的坐标"""
    g: int
    l: int
    vector: LieVector

    def __post_init__(self):
        if self.g < 2 or not 0 <= self.l <= self.g:
            raise OutOfRange(f"V_(l,g) 需要 g >= 2 且 0 <= l <= g, 实际 l={self.l}, g={self.g}")
        degree = self.vector.multidegree(V_ALPHABET)
        if degree is not None and degree != v_multidegree(self.l, self.g):
            raise SpectralException(f"多重次数 {degree} 与 V_({self.l},{self.g}) 不符")

    @property
    def multidegree(self):
        return v_multidegree(self.l, self.g)

    def is_zero(self):
        return not self.vector

    def text(self):
        return format_vector(self.vector, V_ALPHABET)

    def terms(self):
        return format_terms(self.vector, V_ALPHABET)


def v_basis(l, g):
    """V_{l,g} 的定向 Lyndon 基"""
    return [VSpaceElement(g, l, LieVector.basis(word, square))
            for word, square in V_ALGEBRA.basis(v_multidegree(l, g))]


def v_dimension(l, g):
    return V_ALGEBRA.dimension(v_multidegree(l, g))


def omega(g):
    """V_{g,g} 的基向量 B(ab^g)"""
    if not MIN_CERTIFICATE_GENUS <= g:
        raise OutOfRange(f"omega 需要 g >= {MIN_CERTIFICATE_GENUS}, 实际 g={g}")
    return VSpaceElement(g, g, LieVector.basis((A,) + (B,) * g))


def _substitute(expr, target, counter):
    """把从左数第 target 个 b 替换为 [a,a]"""
    if isinstance(expr, Atom):
        if expr.letter == B:
            counter[0] += 1
            if counter[0] == target:
                return Bracket(Atom(A), Atom(A))
        return expr
    return Bracket(_substitute(expr.left, target, counter), _substitute(expr.right, target, counter))


def d1(element):
    """对每个基项, 第 i 个 b 替换为 [a,a] 并乘以 (-1)^(i-1), 再求和规范化"""
    if element.l < 1:
        logger.error(f"d1 作用于第0层: g={element.g}")
        raise LevelZero(f"d1 不能作用于 V_(0,{element.g})")
    poly = {}
    for (word, square), coef in _orient(element.vector).items():
        if square:
            raise SpectralException("V_(l,g) 中不会出现平方基元素")
        expr = standard_bracketing(word)
        for i in range(1, word.count(B) + 1):
            substituted = _substitute(expr, i, [0])
            _add_into(poly, V_ALGEBRA.expr_poly(substituted), (-1) ** (i - 1) * coef)
    image = _orient(V_ALGEBRA.decompose(poly))
    return VSpaceElement(element.g, element.l - 1, image)


def verify_complex(g, lowest=2):
    """对 V_{l,g} (lowest <= l <= g) 的每个基向量检查 d1(d1(x)) = 0, 返回失败列表"""
    failures = []
    for l in range(max(lowest, 2), g + 1):
        for element in v_basis(l, g):
            twice = d1(d1(element))
            if not twice.is_zero():
                failures.append((l, element.text(), twice.text()))
    if failures:
        logger.error(f"g={g} 的 d1∘d1 检查失败 {len(failures)} 处")
    return failures


# ========== 首项 ==========
def leading_keys(g):
    """a^3 b^(g-1) 与 a^2 b a b^(g-2)"""
    return (A, A, A) + (B,) * (g - 1), (A, A, B, A) + (B,) * (g - 2)


def expected_leading(g):
    """偶数 g: (2, g-2); 奇数 g: (0, g-1)"""
    return (2, g - 2) if g % 2 == 0 else (0, g - 1)


@dataclass
class LeadingTermReport:
    g: int
    expected: tuple
    actual: tuple
    remainder_ok: bool
    integral: bool
    expansion: VSpaceElement

    @property
    def holds(self):
        return self.expected == self.actual and self.remainder_ok and self.integral

    def to_dict(self):
        k1, k2 = leading_keys(self.g)
        return {
            "keys": [V_ALPHABET.format_word(k1), V_ALPHABET.format_word(k2)],
            "expected": list(self.expected),
            "actual": [str(c) for c in self.actual],
            "remainder_greater": self.remainder_ok,
            "holds": self.holds,
        }


def _check_genus(g):
    if not MIN_CERTIFICATE_GENUS <= g <= MAX_CERTIFICATE_GENUS:
        logger.error(f"亏格 {g} 超出证书范围")
        raise OutOfRange(f"只支持 {MIN_CERTIFICATE_GENUS} <= g <= {MAX_CERTIFICATE_GENUS}, 实际 g={g}")


def verify_leading_terms(g):
    """展开 d1(omega(g)), 检查两个首项系数且其余项都大于 a^2 b a b^(g-2)"""
    _check_genus(g)
    expansion = d1(omega(g))
    k1, k2 = leading_keys(g)
    actual = (expansion.vector.coefficient(k1), expansion.vector.coefficient(k2))
    remainder_ok = all(word > k2 for word, _ in expansion.vector.keys() if word not in (k1, k2))
    report = LeadingTermReport(g, expected_leading(g), actual, remainder_ok,
                               expansion.vector.is_integral(), expansion)
    logger.info(f"g={g} 首项: 期望 {report.expected}, 实际 {tuple(map(str, actual))}")
    return report


# ========== 证书 ==========
@dataclass
class CertificateCheck:
    name: str
    passed: bool
    witness: str


@dataclass
class Certificate:
    """d1(omega_g) != 0 的可检验证书"""
    g: int
    omega: VSpaceElement
    d1_omega: VSpaceElement
    d1_d1_omega: VSpaceElement
    leading: LeadingTermReport
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    def check(self, name):
        return next(c for c in self.checks if c.name == name)

    def to_dict(self):
        return {
            "format": FORMAT_VERSION,
            "genus": self.g,
            "omega": self.omega.text(),
            "d1_omega": self.d1_omega.text(),
            "d1_omega_terms": self.d1_omega.terms(),
            "d1d1_zero": self.d1_d1_omega.is_zero(),
            "leading_terms": self.leading.to_dict(),
            "good_stratum_check": self.check("target_stratum_good").passed,
            "checks": [{"name": c.name, "passed": c.passed, "witness": c.witness} for c in self.checks],
            "passed": self.passed,
        }

    def narrative(self):
        """人类可读的证明记录"""
        g = self.g
        lines = [
            f"亏格 g = {g}",
            f"omega_{g} = {self.omega.text()} 张成 V_({g},{g})",
            f"d1(omega_{g}) = {self.d1_omega.text()} 属于 V_({g - 1},{g})",
            f"d1(d1(omega_{g})) = {self.d1_d1_omega.text()}",
        ]
        for c in self.checks:
            lines.append(f"[{'通过' if c.passed else '失败'}] {c.name}: {c.witness}")
        if self.passed:
            lines.append(f"结论: d1: V_({g},{g}) -> V_({g - 1},{g}) 非零, 像落在好树页 F1^(-{g - 1},{2 * g - 1}) 中, "
                         f"而 F1^(-{g},{2 * g - 1}) = 0, 故 H^{g}_c 非零")
        return lines


def _empty_source_column(g):
    """F1^{-g,2g-1} = 0: 不存在 g 条边的好树"""
    if g <= MAX_EXHAUSTIVE_SOURCE_GENUS:
        offenders = [cls for cls in enumerate_orbit_classes(2 * g + 2, edge_count=g) if is_good(cls.annotation)]
        return not offenders, f"穷举 Γ_{g}(0,{2 * g + 2}): {len(offenders)} 个好树"
    n = 2 * g + 2
    top = max_good_edges(n)
    return top < g, f"逐层生成好树: Γ(0,{n}) 中好树至多 {top} 条边"


def certify_nonvanishing(g):
    """五项检查全部通过时返回证书, 否则抛出携带证书的 FailedCertificate"""
    _check_genus(g)
    logger.info(f"开始生成 g={g} 的证书")
    w = omega(g)
    image = d1(w)
    twice = d1(image)
    certificate = Certificate(g, w, image, twice, verify_leading_terms(g))

    dim = v_dimension(g, g)
    certificate.checks.append(CertificateCheck("dim_V_gg_is_one", dim == 1, f"dim V_({g},{g}) = {dim}"))
    certificate.checks.append(CertificateCheck("d1_omega_nonzero", not image.is_zero(), image.text()))
    certificate.checks.append(CertificateCheck("d1_squared_zero", twice.is_zero(), twice.text()))

    target = build_T_lg(g - 1, g)
    edges = len(target.graph.edges)
    good = is_good(target) and edges <= g - 1
    certificate.checks.append(CertificateCheck(
        "target_stratum_good", good, f"T_({g - 1},{g}) 好树={is_good(target)}, 边数 {edges} <= {g - 1}"))

    empty, witness = _empty_source_column(g)
    certificate.checks.append(CertificateCheck("source_column_empty", empty, witness))

    if not certificate.passed:
        failed = [c.name for c in certificate.checks if not c.passed]
        logger.error(f"g={g} 的证书失败: {failed}")
        raise FailedCertificate(f"g={g} 的证书检查失败: {', '.join(failed)}", certificate)
    logger.info(f"g={g} 的证书通过")
    return certificate

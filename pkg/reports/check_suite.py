"""
不变量检查套件 (quick / full)
"""
import time
from math import factorial

from core.logger_config import logger
from core.exceptions import ComputationException
from lie.lyndon import GradedAlphabet, lyndon_words, is_lyndon
from lie.algebra import LieAlgebra
from lie.oracle import oracle_component
from spectral.certificate import (
    certify_nonvanishing, verify_leading_terms, verify_complex, v_dimension, v_multidegree, V_ALPHABET,
)
from spectral.tables import f1_table, stratification_epoly_check
from strata.graph import genus, is_stable, automorphism_count, leq
from strata.trees import (
    enumerate_trees, enumerate_trees_by_splitting, enumerate_orbit_classes, build_T_lg, is_good,
)
from strata.pushforward import pushforward, rational_component_count, in_filtration, verify_injectivity
from reports.check_reporter import CheckReporter, CheckResult

LEVELS = ("quick", "full")

# 每个级别的范围上界
BOUNDS = {
    "quick": {"enum_n": 6, "aut_g": 3, "oracle_total": 5, "multilinear_n": 5, "leading_g": 6,
              "certificate_g": 4, "complex_g": 4, "pushforward_g": 3, "injectivity_g": 2,
              "epoly_m": 6, "f1_g": 2},
    "full": {"enum_n": 7, "aut_g": 5, "oracle_total": 7, "multilinear_n": 7, "leading_g": 10,
             "certificate_g": 8, "complex_g": 6, "pushforward_g": 4, "injectivity_g": 3,
             "epoly_m": 8, "f1_g": 4},
}

CHECKS = []


def check(name, module):
    """注册一项检查; 检查函数接收范围字典, 返回 (是否通过, 详情)"""
    def decorator(func):
        CHECKS.append((name, module, func))
        return func
    return decorator


@check("enumeration_counts", "strata")
def _enumeration_counts(bounds, jobs):
    counts = {n: len(enumerate_trees(n)) for n in (4, 5)}
    if counts != {4: 4, 5: 26}:
        return False, f"|Γ(0,n)| = {counts}"
    for n in range(4, bounds["enum_n"] + 1):
        direct = [t for t in enumerate_trees(n)]
        grown = enumerate_trees_by_splitting(n)
        orbit_total = sum(c.orbit_size for c in enumerate_orbit_classes(n, jobs=jobs))
        if not len(direct) == len(grown) == orbit_total:
            return False, f"n={n}: 分割族 {len(direct)}, 顶点分裂 {len(grown)}, 轨道和 {orbit_total}"
    return True, f"|Γ(0,4)|=4, |Γ(0,5)|=26, 两种生成器在 n<={bounds['enum_n']} 一致"


@check("leq_partial_order", "strata")
def _leq_order(bounds, jobs):
    trees = enumerate_trees(5)
    for a in trees:
        if not leq(a, a):
            return False, "自反性失败"
    smooth = trees[[len(t.graph.edges) for t in trees].index(0)]
    if not all(leq(t, smooth) for t in trees):
        return False, "存在不能收缩到光滑图的树"
    return True, f"{len(trees)} 个数值树上自反, 且都 <= 光滑图"


@check("automorphism_T_lg", "strata")
def _automorphisms(bounds, jobs):
    for g in range(2, bounds["aut_g"] + 1):
        for l in range(g + 1):
            tree = build_T_lg(l, g)
            got = automorphism_count(tree.graph, rooted=[tree.tree.flag_of[2 * g + 2]])
            expected = factorial(2 * g - 2 * l + 1) * factorial(l) * 2 ** l
            if got != expected:
                return False, f"|Aut(T_({l},{g}))| = {got}, 期望 {expected}"
    return True, f"|Aut(T_(l,g))| = (2g-2l+1)! l! 2^l, g<={bounds['aut_g']}"


@check("pushforward_invariants", "strata")
def _pushforward_invariants(bounds, jobs):
    total = 0
    for g in range(2, bounds["pushforward_g"] + 1):
        for cls in enumerate_orbit_classes(2 * g + 2, jobs=jobs):
            tree = cls.annotation
            image = pushforward(tree)
            zero_vertices = sum(1 for label in image.genus_labels if label == 0)
            problems = []
            if genus(image) != g or image.leaves:
                problems.append("类型不是 (g,0)")
            if not is_stable(image):
                problems.append("像不稳定")
            if rational_component_count(tree) != zero_vertices:
                problems.append("有理分支计数与亏格0顶点数不符")
            if in_filtration(tree, 0) != is_good(tree):
                problems.append("过滤层0与好树不一致")
            if is_good(tree) and cls.edge_count > g - 1:
                problems.append("好树边数超过 g-1")
            if len(image.edges) < cls.edge_count:
                problems.append("像的结点少于树的边")
            if problems:
                return False, f"g={g}, 边数 {cls.edge_count}: {'; '.join(problems)}"
            total += 1
    return True, f"{total} 个轨道类全部满足"


@check("pushforward_injective", "strata")
def _injectivity(bounds, jobs):
    results = {g: verify_injectivity(g, jobs) for g in range(2, bounds["injectivity_g"] + 1)}
    return all(results.values()), f"单射性: {results}"


@check("lyndon_generation", "lie")
def _lyndon_generation(bounds, jobs):
    alpha = GradedAlphabet.parse("a:odd,b:even")
    for n in range(1, 9):
        for i in range(n + 1):
            generated = lyndon_words(alpha, (i, n - i))
            filtered = sorted(w for w in _words((i, n - i)) if is_lyndon(w))
            if generated != filtered:
                return False, f"多重次数 ({i},{n - i}) 生成结果不一致"
    return True, "长度 <= 8 的两字母 Lyndon 词与过滤结果一致"


def _words(multidegree):
    if not any(multidegree):
        yield ()
        return
    for letter, count in enumerate(multidegree):
        if count:
            rest = list(multidegree)
            rest[letter] -= 1
            for tail in _words(tuple(rest)):
                yield (letter,) + tail


@check("lyndon_vs_oracle", "lie")
def _lyndon_vs_oracle(bounds, jobs):
    alpha = GradedAlphabet.parse("a:odd,b:even")
    algebra = LieAlgebra(alpha)
    for n in range(1, bounds["oracle_total"] + 1):
        for i in range(n + 1):
            rank, _ = oracle_component(alpha, (i, n - i))
            if rank != algebra.dimension((i, n - i)):
                return False, f"({i},{n - i}): oracle 秩 {rank}, Lyndon 维数 {algebra.dimension((i, n - i))}"
    odd3 = GradedAlphabet.parse("x:odd,y:odd,z:odd")
    rank, _ = oracle_component(odd3, (1, 1, 1))
    if rank != 2 or LieAlgebra(odd3).dimension((1, 1, 1)) != 2:
        return False, f"三个奇字母多线性分量秩 {rank}"
    return True, f"总次数 <= {bounds['oracle_total']} 全部一致"


@check("multilinear_dimension", "lie")
def _multilinear(bounds, jobs):
    letters = "abcdefg"
    for n in range(1, bounds["multilinear_n"] + 1):
        alpha = GradedAlphabet.parse(",".join(f"{x}:odd" for x in letters[:n]))
        dim = LieAlgebra(alpha).dimension((1,) * n)
        if dim != factorial(n - 1):
            return False, f"n={n}: 维数 {dim}, 期望 {factorial(n - 1)}"
    return True, f"n <= {bounds['multilinear_n']} 时多线性维数为 (n-1)!"


@check("base_cases", "spectral")
def _base_cases(bounds, jobs):
    texts = {g: certify_nonvanishing(g).d1_omega.text() for g in (2, 3)}
    ok = texts == {2: "2·aaab", 3: "2·aabab"}
    return ok, f"d1(omega_2) = {texts[2]}, d1(omega_3) = {texts[3]}"


@check("leading_terms", "spectral")
def _leading_terms(bounds, jobs):
    for g in range(2, bounds["leading_g"] + 1):
        report = verify_leading_terms(g)
        if not report.holds:
            return False, f"g={g}: {report.to_dict()}"
    return True, f"2 <= g <= {bounds['leading_g']} 首项全部符合"


@check("certificates", "spectral")
def _certificates(bounds, jobs):
    for g in range(2, bounds["certificate_g"] + 1):
        certify_nonvanishing(g)
    return True, f"2 <= g <= {bounds['certificate_g']} 证书全部通过"


@check("d1_squared_zero", "spectral")
def _complex(bounds, jobs):
    for g in range(2, bounds["complex_g"] + 1):
        failures = verify_complex(g)
        if failures:
            return False, f"g={g}: {failures[:2]}"
    return True, f"g <= {bounds['complex_g']} 的 V_(l,g) 基上 d1∘d1 = 0"


@check("v_dimension_vs_oracle", "spectral")
def _v_dimension(bounds, jobs):
    for g in (2, 3):
        for l in range(g + 1):
            rank, _ = oracle_component(V_ALPHABET, v_multidegree(l, g))
            plain = LieAlgebra(GradedAlphabet.parse("a:odd,b:even")).dimension(v_multidegree(l, g))
            if not rank == plain == v_dimension(l, g):
                return False, f"V_({l},{g}): oracle {rank}, 超代数 {plain}, V {v_dimension(l, g)}"
    return True, "2g+1 <= 7 时 dim V_(l,g) 与 oracle 秩一致"


@check("epoly_stratification", "spectral")
def _epoly(bounds, jobs):
    texts = []
    for m in range(4, bounds["epoly_m"] + 1):
        result = stratification_epoly_check(m, jobs)
        if not result.holds:
            return False, f"m={m}: {result.checks}"
        texts.append(f"m={m}: {result.polynomial_text()}")
    return True, "; ".join(texts)


@check("f1_bounds", "spectral")
def _f1(bounds, jobs):
    for g in range(2, bounds["f1_g"] + 1):
        table = f1_table(g, jobs)
        if table.violations:
            return False, f"g={g}: {table.violations[:2]}"
    return True, f"g <= {bounds['f1_g']} 的 F1 页满足边界"


def run_suite(level="quick", reporter=None, jobs=None):
    """运行全部检查, 结果写入 reporter 并返回"""
    if level not in LEVELS:
        raise ComputationException(f"未知的检查级别 {level}, 可选 {LEVELS}")
    reporter = reporter or CheckReporter()
    bounds = BOUNDS[level]
    logger.info(f"开始 {level} 级检查, 共 {len(CHECKS)} 项")
    for name, module, func in CHECKS:
        start = time.time()
        try:
            passed, detail = func(bounds, jobs)
        except ComputationException as e:
            passed, detail = False, str(e)
        elapsed = f"{time.time() - start:.2f}s"
        status = "PASSED" if passed else "FAILED"
        if not passed:
            logger.error(f"检查 {name} 失败: {detail}")
        reporter.add_result(CheckResult(name, module, status, elapsed, detail, func.__doc__ or ""))
    return reporter

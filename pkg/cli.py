"""
命令行入口: python cli.py <子命令> [选项]

退出码: 0 成功, 1 证书或检查失败, 2 用法或输入错误
"""
import argparse
import os
import sys

project_root = os.path.dirname(os.path.abspath(__file__))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from config import V_ALPHABET_SPEC, default_jobs
from core.logger_config import logger
from core.exceptions import (
    ComputationException, CliException, UsageError, FailedCertificate, OutOfRange,
)
from lie.lyndon import GradedAlphabet, standard_bracketing, format_expr
from lie.algebra import LieAlgebra
from lie.parser import parse_combination, parse_vector, format_vector, format_terms
from spectral.certificate import VSpaceElement, V_ALPHABET, omega, d1, certify_nonvanishing
from spectral.tables import e1_table, f1_table
from strata.graph import genus
from strata.trees import (
    enumerate_trees, enumerate_orbit_classes, annotate, is_good, build_T_lg,
)
from strata.pushforward import pushforward_trace, rational_component_count
from reports.serialization import dump_json, read_graph_file, emit
from reports.check_reporter import CheckReporter, save_tables_to_excel
from reports.check_suite import run_suite, LEVELS

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    """用法错误抛出 UsageError, 由 run 统一处理"""

    def error(self, message):
        raise UsageError(message, f"使用 '{self.prog} --help' 查看用法")


def _pair(text):
    """解析 'l,g'"""
    try:
        l, g = (int(part) for part in text.split(","))
    except ValueError as e:
        raise UsageError(f"无法解析 '{text}'", "格式应为 l,g, 例如 --tlg 2,4", e)
    return l, g


def _tree_argument(args):
    """--tree 文件或 --tlg l,g, 二者恰选其一"""
    if bool(args.tree) == bool(args.tlg):
        raise UsageError("需要恰好一个输入树", "使用 --tree <file.json> 或 --tlg l,g")
    if args.tlg:
        return build_T_lg(*_pair(args.tlg))
    return annotate(read_graph_file(args.tree))


def _require(args, name, hint):
    if getattr(args, name) is None:
        raise UsageError(f"缺少参数 --{name}", hint)
    return getattr(args, name)


# ========== 子命令 ==========
def cmd_enumerate(args):
    n = _require(args, "n", "例如: enumerate --n 5 --orbits")
    if args.good and n % 2:
        raise UsageError(f"--good 需要偶数个叶子, 实际 n={n}", "去掉 --good 或改用偶数 n")
    if args.orbits:
        classes = enumerate_orbit_classes(n, args.edges, args.jobs)
        if args.good:
            classes = [cls for cls in classes if is_good(cls.annotation)]
        items = [{"edges": cls.edge_count, "orbit_size": cls.orbit_size,
                  "representative": cls.representative.to_dict()} for cls in classes]
        data = {"n": n, "orbits": True, "count": len(items),
                "numbered_count": sum(cls.orbit_size for cls in classes), "classes": items}
    else:
        trees = enumerate_trees(n, args.edges)
        if args.good:
            trees = [tree for tree in trees if is_good(annotate(tree))]
        data = {"n": n, "orbits": False, "count": len(trees), "trees": [tree.to_dict() for tree in trees]}
    emit(dump_json(data), args.out)
    return EXIT_OK


def cmd_annotate(args):
    tree = _tree_argument(args)
    data = tree.to_dict()
    data["good"] = is_good(tree)
    data["rational_components"] = rational_component_count(tree)
    emit(dump_json(data), args.out)
    return EXIT_OK


def cmd_pushforward(args):
    tree = _tree_argument(args)
    image, trace = pushforward_trace(tree)
    data = {"tree": tree.to_dict(), "image": image.to_dict(), "genus": genus(image), "trace": trace}
    emit(dump_json(data), args.out)
    return EXIT_OK


def cmd_lyndon(args):
    alpha = GradedAlphabet.parse(args.alphabet)
    degree = alpha.multidegree_vector(_require(args, "degree", "例如: --degree 3,2"))
    algebra = LieAlgebra(alpha)
    basis = []
    for word, square in algebra.basis(degree):
        text = alpha.format_word(word)
        bracketing = format_expr(standard_bracketing(word), alpha)
        basis.append({"word": text, "square": square,
                      "bracketing": f"[{bracketing},{bracketing}]" if square else bracketing})
    data = {"alphabet": alpha.spec(), "multidegree": list(degree), "dimension": len(basis), "basis": basis}
    emit(dump_json(data), args.out)
    return EXIT_OK


def cmd_normalize(args):
    alpha = GradedAlphabet.parse(args.alphabet)
    text = _require(args, "expr", "例如: --expr \"[[a,b],[a,a]]\"")
    vector = LieAlgebra(alpha).normalize(parse_combination(text, alpha))
    data = {"alphabet": alpha.spec(), "expr": text, "vector": format_vector(vector, alpha),
            "terms": format_terms(vector, alpha)}
    emit(dump_json(data), args.out)
    return EXIT_OK


def cmd_d1(args):
    """--genus g 作用于 omega_g; --tlg l,g --expr <向量> 作用于 V_(l,g) 中的任意元素"""
    if args.tlg:
        l, g = _pair(args.tlg)
        text = _require(args, "expr", "例如: d1 --tlg 2,3 --expr \"1·aabbb\"")
        element = VSpaceElement(g, l, parse_vector(text, V_ALPHABET))
    else:
        element = omega(_require(args, "genus", "使用 --genus g 或 --tlg l,g --expr <向量>"))
    image = d1(element)
    data = {"genus": element.g, "source_level": element.l, "target_level": image.l,
            "source": element.text(), "d1": image.text(), "terms": image.terms()}
    emit(dump_json(data), args.out)
    return EXIT_OK


def cmd_certify(args):
    g = _require(args, "genus", "例如: certify --genus 3")
    try:
        certificate = certify_nonvanishing(g)
        code = EXIT_OK
    except FailedCertificate as e:
        certificate = e.certificate
        code = EXIT_FAILED
    data = certificate.to_dict()
    data["proof_log"] = certificate.narrative()
    emit(dump_json(data), args.out)
    return code


def cmd_tables(args):
    kind = (args.kind or "").lower()
    if kind == "e1":
        table = e1_table(_require(args, "n", "例如: tables --kind e1 --n 6"), args.jobs)
    elif kind == "f1":
        table = f1_table(_require(args, "genus", "例如: tables --kind f1 --genus 3"), args.jobs)
    else:
        raise UsageError(f"未知的表格类型 '{args.kind}'", "--kind 取 e1 或 f1")
    if args.out and args.out.endswith(".xlsx"):
        if not save_tables_to_excel([table], args.out):
            raise CliException(f"无法写入 {args.out}")
    else:
        emit(table.to_csv(), args.out)
    return EXIT_FAILED if table.violations else EXIT_OK


def cmd_check(args):
    if args.level not in LEVELS:
        raise UsageError(f"未知的检查级别 '{args.level}'", f"--level 取 {' 或 '.join(LEVELS)}")
    reporter = run_suite(args.level, CheckReporter(), args.jobs)
    summary = reporter.summary()
    if args.out and args.out.endswith(".xlsx"):
        reporter.save_results_to_excel(args.out)
    else:
        data = {"level": args.level, "summary": summary,
                "checks": [{"name": r.check_name, "module": r.module, "status": r.status, "detail": r.detail}
                           for r in reporter.results]}
        emit(dump_json(data), args.out)
    return EXIT_OK if summary["failed"] == 0 else EXIT_FAILED


COMMANDS = {
    "enumerate": (cmd_enumerate, "枚举 Γ(0,n) 数值树或轨道类"),
    "annotate": (cmd_annotate, "计算树的奇偶性, rho 与 nu"),
    "pushforward": (cmd_pushforward, "树的推前图与规则记录"),
    "lyndon": (cmd_lyndon, "列出 Lyndon 基"),
    "normalize": (cmd_normalize, "把括号表达式写成 Lyndon 基的组合"),
    "d1": (cmd_d1, "计算微分 d1"),
    "certify": (cmd_certify, "生成非零性证书"),
    "tables": (cmd_tables, "E1 / F1 维数表"),
    "check": (cmd_check, "运行不变量检查套件"),
}


def build_parser():
    parser = _Parser(prog="hyperlocus", description="超椭圆轨迹的组合计算工具")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--n", type=int)
        cmd.add_argument("--genus", type=int)
        cmd.add_argument("--edges", type=int)
        cmd.add_argument("--orbits", action="store_true")
        cmd.add_argument("--good", action="store_true")
        cmd.add_argument("--tlg")
        cmd.add_argument("--tree")
        cmd.add_argument("--alphabet", default=V_ALPHABET_SPEC)
        cmd.add_argument("--degree")
        cmd.add_argument("--expr")
        cmd.add_argument("--kind")
        cmd.add_argument("--level", default="quick")
        cmd.add_argument("--jobs", type=int, default=None)
        cmd.add_argument("--out")
    return parser


def run(argv=None):
    """解析参数并分派子命令, 返回退出码"""
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("缺少子命令", f"可用子命令: {', '.join(COMMANDS)}")
        if args.jobs is None:
            args.jobs = default_jobs()
        logger.info(f"执行子命令 {args.command}")
        return COMMANDS[args.command][0](args)
    except (CliException, OutOfRange) as e:
        hint = getattr(e, "hint", "") or "参数超出支持范围或输入格式错误"
        sys.stderr.write(f"错误: {e}\n提示: {hint}\n")
        return EXIT_USAGE
    except FailedCertificate as e:
        sys.stderr.write(f"证书失败: {e}\n")
        return EXIT_FAILED
    except ComputationException as e:
        logger.error(f"计算失败: {str(e)}")
        sys.stderr.write(f"错误: {e}\n提示: 输入不满足该运算的前提条件\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(run())

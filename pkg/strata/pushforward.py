"""
允许双覆盖的推前: 树 T 到亏格 g 稳定对偶图, 有理分支计数与结点上界
"""
from dataclasses import dataclass, field

from config import MIN_HYPERELLIPTIC_GENUS, MAX_PUSHFORWARD_GENUS, MAX_INJECTIVITY_GENUS
from core.logger_config import logger
from core.exceptions import OutOfRange, PushforwardException
from strata.graph import Graph, stabilize, canonical_form, genus
from strata.trees import AnnotatedTree, annotate, enumerate_orbit_classes


def _annotated(t):
    if isinstance(t, AnnotatedTree):
        return t
    return annotate(t)


def _check_genus(g, upper, what):
    if not MIN_HYPERELLIPTIC_GENUS <= g <= upper:
        logger.error(f"{what}: 亏格 {g} 超出范围")
        raise OutOfRange(f"{what} 只支持 {MIN_HYPERELLIPTIC_GENUS} <= g <= {upper}, 实际 g={g}")


def admissible_cover_graph(t, trace=None):
    """稳定化之前的覆盖图

    rho(v) >= 2 的顶点给出一个亏格 (rho-2)/2 的顶点, rho(v) = 0 给出两个亏格0顶点;
    奇边给出一条边, 偶边给出两条边; 叶子不贡献旗。
    """
    t = _annotated(t)
    graph = t.graph
    parts, labels, covers = [], [], []
    for v, rho in enumerate(t.rho):
        if rho % 2:
            raise PushforwardException(f"顶点 {v} 的 rho={rho} 为奇数")
        if rho == 0:
            covers.append([len(parts), len(parts) + 1])
            parts += [[], []]
            labels += [0, 0]
            if trace is not None:
                trace.append(f"顶点 {v}: rho=0, 提升为两个亏格0顶点")
        else:
            covers.append([len(parts)])
            parts.append([])
            labels.append((rho - 2) // 2)
            if trace is not None:
                trace.append(f"顶点 {v}: rho={rho}, 提升为亏格 {(rho - 2) // 2} 的顶点")

    pairs = []

    def join(a, b):
        flag = 2 * len(pairs) + 1
        parts[a].append(flag)
        parts[b].append(flag + 1)
        pairs.append((flag, flag + 1))

    for edge in graph.edges:
        u, v = graph.edge_endpoints(edge)
        cu, cv = covers[u], covers[v]
        if t.edge_parity(edge) == 1:
            join(cu[0], cv[0])
            if trace is not None:
                trace.append(f"奇边 {edge}: 一条边")
            continue
        if len(cu) == 1 and len(cv) == 1:
            join(cu[0], cv[0])
            join(cu[0], cv[0])
        elif len(cu) == 2 and len(cv) == 2:
            join(cu[0], cv[0])
            join(cu[1], cv[1])
        else:
            double, single = (cu, cv[0]) if len(cu) == 2 else (cv, cu[0])
            join(double[0], single)
            join(double[1], single)
        if trace is not None:
            trace.append(f"偶边 {edge}: 两条边")

    return Graph(parts, pairs, labels)


def pushforward_trace(t):
    """返回 (像图, 规则与稳定化步骤的文字记录)"""
    trace = []
    cover = admissible_cover_graph(t, trace)
    trace.append(f"覆盖图: {len(cover.vertices)} 个顶点, {len(cover.edges)} 条边")
    image = stabilize(cover, trace)
    trace.append(f"像图: {len(image.vertices)} 个顶点, {len(image.edges)} 条边, 亏格 {genus(image)}")
    return image, trace


def pushforward(t):
    """stabilize(admissible_cover_graph(t)), 类型为 (g, 0)"""
    return stabilize(admissible_cover_graph(t))


def rational_component_count(t):
    """2 |{rho=0}| + |{内部且 rho=2}|"""
    t = _annotated(t)
    zero = sum(1 for rho in t.rho if rho == 0)
    inner_two = sum(1 for rho, inner in zip(t.rho, t.internal) if inner and rho == 2)
    return 2 * zero + inner_two


def in_filtration(t, k):
    """树的像至多有 k 个有理分支"""
    if k < 0:
        logger.error(f"滤过层数 k={k} 为负")
        raise OutOfRange(f"滤过层数 k 必须非负, 实际 k={k}")
    return rational_component_count(t) <= k


@dataclass
class NodeBoundReport:
    """过滤层 k 中树的结点数统计"""
    g: int
    k: int
    classes_by_edges: dict = field(default_factory=dict)
    numbered_by_edges: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def bound(self):
        return self.g + self.k - 1

    @property
    def max_edges(self):
        return max(self.classes_by_edges, default=-1)

    @property
    def holds(self):
        return not self.violations

    def to_dict(self):
        return {
            "genus": self.g,
            "k": self.k,
            "bound": self.bound,
            "max_edges": self.max_edges,
            "classes_by_edges": {str(e): c for e, c in sorted(self.classes_by_edges.items())},
            "numbered_by_edges": {str(e): c for e, c in sorted(self.numbered_by_edges.items())},
            "violations": list(self.violations),
            "holds": self.holds,
        }


def node_bound_report(g, k, jobs=None):
    """穷举 Γ(0,2g+2) 中过滤层 k 的树, 检查边数 <= g+k-1 且像的边数不少于树的边数"""
    _check_genus(g, MAX_PUSHFORWARD_GENUS, "node_bound_report")
    if k < 0:
        raise OutOfRange(f"k 必须非负, 实际 k={k}")
    report = NodeBoundReport(g, k)
    for cls in enumerate_orbit_classes(2 * g + 2, jobs=jobs):
        tree = cls.annotation
        if not in_filtration(tree, k):
            continue
        edges = cls.edge_count
        report.classes_by_edges[edges] = report.classes_by_edges.get(edges, 0) + 1
        report.numbered_by_edges[edges] = report.numbered_by_edges.get(edges, 0) + cls.orbit_size
        image_edges = len(pushforward(tree).edges)
        if edges > report.bound:
            report.violations.append(f"树有 {edges} 条边, 超过上界 {report.bound}")
        if image_edges < edges:
            report.violations.append(f"像只有 {image_edges} 个结点, 少于树的 {edges} 个")
    if report.violations:
        logger.error(f"g={g}, k={k} 的结点上界检查失败: {report.violations[:3]}")
    else:
        logger.info(f"g={g}, k={k} 的结点上界检查通过, 最大边数 {report.max_edges}")
    return report


def pushforward_images(g, jobs=None):
    """每个轨道类的像的规范形, 与轨道类顺序一致"""
    return [(cls, canonical_form(pushforward(cls.annotation)))
            for cls in enumerate_orbit_classes(2 * g + 2, jobs=jobs)]


def verify_injectivity(g, jobs=None):
    """Γ(0,2g+2)/S_{2g+2} -> Γ(g,0) 在轨道类上是否单射"""
    _check_genus(g, MAX_INJECTIVITY_GENUS, "verify_injectivity")
    keys = [key for _, key in pushforward_images(g, jobs)]
    injective = len(set(keys)) == len(keys)
    logger.info(f"g={g}: {len(keys)} 个轨道类, 像两两不同={injective}")
    return injective

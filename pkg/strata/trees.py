"""
亏格0数值树 Γ(0,n) 的枚举, 轨道类, 奇偶性与分歧数标注, 好树判定
"""
from dataclasses import dataclass
from itertools import combinations
from math import factorial

import networkx as nx

from config import MIN_TREE_LEAVES, MAX_TREE_LEAVES, MAX_GOOD_TREE_LEAVES
from core.logger_config import logger
from core.workers import WorkerPool
from core.exceptions import OutOfRange, NotATree, OddLeafTotal, GraphException
from strata.graph import (
    Graph, NumberedGraph, split_numbering, betti1, canonical_form, automorphism_count,
)


# ========== 构造 ==========
def build_tree(vertex_leaves, tree_edges):
    """由每个顶点的叶子编号和顶点间的边构造数值树

    编号为 k 的叶子使用旗 k, 边的旗从 n+1 开始依次分配。
    """
    n = sum(len(leaves) for leaves in vertex_leaves)
    parts = [list(leaves) for leaves in vertex_leaves]
    pairs = []
    next_flag = n + 1
    for u, v in tree_edges:
        parts[u].append(next_flag)
        parts[v].append(next_flag + 1)
        pairs.append((next_flag, next_flag + 1))
        next_flag += 2
    graph = Graph(parts, pairs)
    return NumberedGraph(graph, {leaf: leaf for leaf in graph.leaves})


def as_numbered(tree):
    """普通 Graph 按旗的顺序给叶子编号"""
    if isinstance(tree, NumberedGraph):
        return tree
    return NumberedGraph(tree, {flag: i + 1 for i, flag in enumerate(tree.leaves)})


def split_vertex(graph, v, subset):
    """把顶点 v 的旗子集 subset 移到新顶点上, 并用新边连接"""
    fresh = max(graph.flags, default=0) + 1
    parts = [list(part) for part in graph.vertices]
    parts[v] = [f for f in parts[v] if f not in subset] + [fresh]
    parts.append(list(subset) + [fresh + 1])
    return Graph(parts, list(graph.edges) + [(fresh, fresh + 1)], list(graph.genus_labels) + [0])


def _check_range(n):
    if not MIN_TREE_LEAVES <= n <= MAX_TREE_LEAVES:
        logger.error(f"叶子数 {n} 超出范围")
        raise OutOfRange(f"叶子数 n={n} 超出支持范围 [{MIN_TREE_LEAVES}, {MAX_TREE_LEAVES}]")


def _check_edge_count(n, edge_count):
    if edge_count is not None and not 0 <= edge_count <= n - 3:
        logger.error(f"边数 {edge_count} 超出范围")
        raise OutOfRange(f"边数 {edge_count} 超出范围 [0, {n - 3}]")


# ========== 数值树枚举 ==========
def _compatible(a, b):
    return a & b == 0 or a & b == a or a & b == b


def _tree_from_splits(n, splits):
    """由相容分割族 (不含叶子 n 的一侧, 位掩码) 构造树"""
    ordered = sorted(splits, key=lambda mask: bin(mask).count("1"))
    parent = {}
    for i, mask in enumerate(ordered):
        parent[i] = next((j for j in range(i + 1, len(ordered))
                          if ordered[j] & mask == mask), None)
    covered = [0] * len(ordered)
    root_covered = 0
    for i, mask in enumerate(ordered):
        if parent[i] is None:
            root_covered |= mask
        else:
            covered[parent[i]] |= mask

    def members(mask):
        return [k + 1 for k in range(n - 1) if mask >> k & 1]

    vertex_leaves = [[k for k in range(1, n) if not root_covered >> (k - 1) & 1] + [n]]
    vertex_leaves += [members(mask & ~covered[i]) for i, mask in enumerate(ordered)]
    tree_edges = [(0 if parent[i] is None else parent[i] + 1, i + 1) for i in range(len(ordered))]
    return build_tree(vertex_leaves, tree_edges)


def enumerate_trees(n, edge_count=None):
    """Γ(0,n) 中每个同构类一个代表, 按规范形排序"""
    _check_range(n)
    _check_edge_count(n, edge_count)
    logger.info(f"枚举 Γ(0,{n}) 数值树, 边数={edge_count}")

    candidates = [mask for mask in range(1, 1 << (n - 1))
                  if 2 <= bin(mask).count("1") <= n - 2]
    families = []

    def extend(start, chosen):
        if edge_count is None or len(chosen) == edge_count:
            families.append(tuple(chosen))
        if edge_count is not None and len(chosen) == edge_count:
            return
        for i in range(start, len(candidates)):
            mask = candidates[i]
            if all(_compatible(mask, other) for other in chosen):
                chosen.append(mask)
                extend(i + 1, chosen)
                chosen.pop()

    extend(0, [])
    trees = [_tree_from_splits(n, family) for family in families]
    trees.sort(key=canonical_form)
    logger.info(f"Γ(0,{n}) 共 {len(trees)} 个数值树")
    return trees


def _flag_subsets(graph, v, numbered):
    """顶点 v 上所有可分裂出去的旗子集 (至少两个旗留在两侧)"""
    flags = graph.vertices[v]
    if numbered:
        anchor, rest = flags[0], flags[1:]
        for size in range(2, len(flags) - 1):
            for subset in combinations(rest, size):
                yield subset
        return
    # 无编号时叶子不可区分, 只需选择叶子个数
    leaves = graph.vertex_leaves(v)
    others = [f for f in flags if f not in leaves]
    for k in range(len(leaves) + 1):
        for size in range(len(others) + 1):
            if not 2 <= k + size <= len(flags) - 2:
                continue
            for subset in combinations(others, size):
                yield tuple(leaves[:k]) + subset


def _children(g):
    """一次顶点分裂得到的所有树 (按规范形去重)"""
    graph, numbering = split_numbering(g)
    found = {}
    for v in range(len(graph.vertices)):
        for subset in _flag_subsets(graph, v, numbering is not None):
            child = split_vertex(graph, v, subset)
            if numbering is not None:
                child = NumberedGraph(child, numbering)
            found.setdefault(canonical_form(child), child)
    return list(found.items())


def _grow(start, max_edges, jobs=None):
    """从无边的树出发逐层分裂顶点, 返回 {边数: {规范形: 树}}"""
    levels = {0: {canonical_form(start): start}}
    for edges in range(1, max_edges + 1):
        parents = [levels[edges - 1][key] for key in sorted(levels[edges - 1])]
        merged = {}
        for children in WorkerPool.map(_children, parents, jobs):
            for key, child in children:
                merged.setdefault(key, child)
        levels[edges] = merged
        logger.debug(f"第 {edges} 层共 {len(merged)} 个类")
    return levels


def enumerate_trees_by_splitting(n):
    """独立生成器: 逐层分裂顶点并用规范形去重"""
    _check_range(n)
    star = build_tree([list(range(1, n + 1))], [])
    levels = _grow(star, n - 3, jobs=1)
    trees = [tree for level in levels.values() for tree in level.values()]
    trees.sort(key=canonical_form)
    return trees


# ========== 标注 ==========
@dataclass(frozen=True)
class AnnotatedTree:
    """带奇偶性, 分歧数 rho, 边价 nu 与内部标志的数值树"""
    tree: NumberedGraph
    parity: tuple
    rho: tuple
    nu: tuple
    internal: tuple

    @property
    def graph(self):
        return self.tree.graph

    @property
    def leaf_count(self):
        return len(self.graph.leaves)

    @property
    def target_genus(self):
        return (self.leaf_count - 2) // 2

    def flag_parity(self, flag):
        return dict(self.parity)[flag]

    def edge_parity(self, edge):
        return self.flag_parity(edge[0])

    @property
    def odd_edges(self):
        return tuple(e for e in self.graph.edges if self.edge_parity(e) == 1)

    @property
    def even_edges(self):
        return tuple(e for e in self.graph.edges if self.edge_parity(e) == 0)

    def to_dict(self):
        data = self.tree.to_dict()
        data["parity"] = {str(i): self.edge_parity(e) for i, e in enumerate(self.graph.edges)}
        order = sorted(range(len(self.graph.vertices)), key=lambda v: self.graph.vertices[v])
        data["rho"] = [self.rho[v] for v in order]
        data["nu"] = [self.nu[v] for v in order]
        return data


def annotate(t):
    """计算每条边的奇偶性与每个顶点的 rho, nu, internal"""
    t = as_numbered(t)
    graph = t.graph
    try:
        b1 = betti1(graph)
    except GraphException as e:
        logger.error(f"输入不是连通图: {str(e)}")
        raise NotATree("输入不是树: 图不连通", e)
    if b1 != 0 or any(graph.genus_labels):
        logger.error(f"输入不是亏格0的树: b1={b1}")
        raise NotATree(f"输入不是亏格0的树 (b1={b1}, 亏格标签={list(graph.genus_labels)})")
    n = len(graph.leaves)
    if n % 2:
        logger.error(f"叶子总数 {n} 为奇数")
        raise OddLeafTotal(f"叶子总数 {n} 为奇数, 奇偶性无定义")

    network = graph.to_networkx()
    parity = {leaf: 1 for leaf in graph.leaves}
    for edge in graph.edges:
        u, v = graph.edge_endpoints(edge)
        cut = network.copy()
        cut.remove_edge(u, v, key=edge)
        side = nx.node_connected_component(cut, u)
        leaves_on_side = sum(len(graph.vertex_leaves(w)) for w in side)
        parity[edge[0]] = parity[edge[1]] = leaves_on_side % 2

    rho = tuple(sum(parity[f] for f in part) for part in graph.vertices)
    nu = tuple(len(part) - len(graph.vertex_leaves(v)) for v, part in enumerate(graph.vertices))
    internal = tuple(x > 1 for x in nu)
    return AnnotatedTree(t, tuple(sorted(parity.items())), rho, nu, internal)


def is_good(t):
    """所有内部顶点满足 rho >= 4"""
    return all(rho >= 4 for rho, inner in zip(t.rho, t.internal) if inner)


def stratum_dimension(t, r=None):
    """dim M_T = n - 3 - r"""
    graph, _ = split_numbering(t.tree if isinstance(t, AnnotatedTree) else t)
    if r is None:
        r = len(graph.edges)
    return len(graph.leaves) - 3 - r


def build_T_lg(l, g):
    """星形树 T_{l,g}: v0 带叶子 2l+1..2g+2, v_i 带叶子 2i-1, 2i"""
    if g < 2 or not 0 <= l <= g:
        logger.error(f"T_(l,g) 参数超出范围: l={l}, g={g}")
        raise OutOfRange(f"需要 0 <= l <= g 且 g >= 2, 实际 l={l}, g={g}")
    vertex_leaves = [list(range(2 * l + 1, 2 * g + 3))]
    vertex_leaves += [[2 * i - 1, 2 * i] for i in range(1, l + 1)]
    return annotate(build_tree(vertex_leaves, [(0, i) for i in range(1, l + 1)]))


# ========== 轨道类 ==========
@dataclass(frozen=True)
class StratumClass:
    """Γ(0,n)/S_n 中的一个类

    representative 是一个数值树代表; n 为偶数时 annotation 为其标注。
    """
    representative: NumberedGraph
    edge_count: int
    orbit_size: int
    canonical_key: bytes
    annotation: AnnotatedTree = None

    @property
    def leaf_count(self):
        return len(self.representative.graph.leaves)

    def vertex_flag_counts(self):
        return tuple(len(part) for part in self.representative.graph.vertices)


def _stratum_class(graph):
    graph, _ = split_numbering(graph)
    numbered = as_numbered(graph)
    n = len(graph.leaves)
    automorphisms = automorphism_count(graph)
    return StratumClass(
        representative=numbered,
        edge_count=len(graph.edges),
        orbit_size=factorial(n) // automorphisms,
        canonical_key=canonical_form(graph),
        annotation=annotate(numbered) if n % 2 == 0 else None,
    )


def _class_order(cls):
    return cls.edge_count, cls.canonical_key


def orbit_representatives(trees):
    """按忽略编号的规范形分组, 每组一个 StratumClass"""
    groups = {}
    for tree in trees:
        graph, _ = split_numbering(tree)
        groups.setdefault(canonical_form(graph), graph)
    return sorted((_stratum_class(graph) for graph in groups.values()), key=_class_order)


def enumerate_orbit_classes(n, edge_count=None, jobs=None):
    """直接在无编号树上分裂顶点, 枚举 Γ(0,n)/S_n"""
    _check_range(n)
    _check_edge_count(n, edge_count)
    logger.info(f"枚举 Γ(0,{n})/S_{n} 轨道类, 边数={edge_count}")
    star = Graph([list(range(1, n + 1))])
    levels = _grow(star, n - 3 if edge_count is None else edge_count, jobs)
    wanted = levels.values() if edge_count is None else [levels[edge_count]]
    classes = [_stratum_class(graph) for level in wanted for graph in level.values()]
    classes.sort(key=_class_order)
    logger.info(f"Γ(0,{n})/S_{n} 共 {len(classes)} 个轨道类")
    return classes


# ========== 好树逐层生成 ==========
def _good_children(graph):
    return [(key, child) for key, child in _children(graph) if is_good(annotate(child))]


def good_tree_levels(n, jobs=None):
    """只分裂好树, 逐层生成 Γ(0,n)/S_n 中的好树类, 返回 {边数: {规范形: 树}}

    好树收缩任一条边仍是好树, 所以每个 e 条边的好树都由某个 e-1 条边的好树分裂得到。
    """
    if n % 2 or not 4 <= n <= MAX_GOOD_TREE_LEAVES:
        logger.error(f"好树生成的叶子数 {n} 无效")
        raise OutOfRange(f"好树生成需要偶数 n, 4 <= n <= {MAX_GOOD_TREE_LEAVES}, 实际 n={n}")
    star = Graph([list(range(1, n + 1))])
    levels = {0: {canonical_form(star): star}}
    edges = 0
    while levels[edges] and edges < n - 3:
        parents = [levels[edges][key] for key in sorted(levels[edges])]
        merged = {}
        for children in WorkerPool.map(_good_children, parents, jobs):
            for key, child in children:
                merged.setdefault(key, child)
        edges += 1
        levels[edges] = merged
        logger.debug(f"Γ(0,{n}) 好树第 {edges} 层共 {len(merged)} 个类")
    return {e: level for e, level in levels.items() if level}


def max_good_edges(n, jobs=None):
    """Γ(0,n) 中好树的最大边数"""
    top = max(good_tree_levels(n, jobs))
    logger.info(f"Γ(0,{n}) 中好树至多 {top} 条边")
    return top

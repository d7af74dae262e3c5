"""
稳定图基础运算: 亏格, Betti 数, 稳定性, 稳定化, 收缩, 同构与自同构
"""
import json
from dataclasses import dataclass
from itertools import combinations
from math import factorial

import networkx as nx

from core.logger_config import logger
from core.exceptions import (
    GraphException, DisconnectedGraph, Unstabilizable, UnknownEdge, TypeMismatch,
)


@dataclass(frozen=True)
class GraphType:
    """图的类型 (g, n)"""
    genus: int
    leaf_count: int

    def __post_init__(self):
        if self.genus < 0 or self.leaf_count < 0:
            raise GraphException(f"类型必须非负: ({self.genus}, {self.leaf_count})")

    @property
    def is_stable_type(self):
        return 2 * self.genus - 2 + self.leaf_count > 0


class Graph:
    """由旗, 对合与顶点划分给出的图

    vertices 是旗的不交划分 (允许没有旗的顶点), genus 与 vertices 对齐。
    involution 只列出成对的旗, 不动点即为叶子。
    """

    __slots__ = ("vertices", "genus_labels", "_sigma", "_vertex_of")

    def __init__(self, vertices, involution=(), genus=None):
        vertices = tuple(tuple(sorted(part)) for part in vertices)
        if not vertices:
            raise GraphException("图至少需要一个顶点")
        genus = tuple(genus) if genus is not None else (0,) * len(vertices)
        if len(genus) != len(vertices):
            raise GraphException(f"亏格标签数 {len(genus)} 与顶点数 {len(vertices)} 不一致")
        if any(x < 0 for x in genus):
            raise GraphException(f"亏格标签必须非负: {genus}")

        vertex_of = {}
        for index, part in enumerate(vertices):
            for flag in part:
                if flag in vertex_of:
                    raise GraphException(f"旗 {flag} 出现在多个顶点中")
                vertex_of[flag] = index

        sigma = {flag: flag for flag in vertex_of}
        for pair in involution:
            a, b = pair
            if a not in vertex_of or b not in vertex_of:
                raise GraphException(f"对合中的旗不在任何顶点上: {pair}")
            if a == b or sigma[a] != a or sigma[b] != b:
                raise GraphException(f"对合不是自逆映射: {pair}")
            sigma[a], sigma[b] = b, a

        self.vertices = vertices
        self.genus_labels = genus
        self._sigma = sigma
        self._vertex_of = vertex_of

    # ---------- 基本访问 ----------
    @property
    def flags(self):
        return tuple(sorted(self._sigma))

    def sigma(self, flag):
        return self._sigma[flag]

    def vertex_of(self, flag):
        return self._vertex_of[flag]

    @property
    def leaves(self):
        return tuple(f for f in self.flags if self._sigma[f] == f)

    @property
    def edges(self):
        return tuple(sorted((f, s) for f, s in self._sigma.items() if f < s))

    @property
    def involution(self):
        return self.edges

    def valence(self, v):
        return len(self.vertices[v])

    def vertex_leaves(self, v):
        return tuple(f for f in self.vertices[v] if self._sigma[f] == f)

    def loop_count(self, v):
        return sum(1 for a, b in self.edges if self._vertex_of[a] == v and self._vertex_of[b] == v)

    def edge_endpoints(self, edge):
        a, b = edge
        return self._vertex_of[a], self._vertex_of[b]

    def to_networkx(self):
        """顶点级多重图"""
        multigraph = nx.MultiGraph()
        multigraph.add_nodes_from(range(len(self.vertices)))
        for edge in self.edges:
            multigraph.add_edge(*self.edge_endpoints(edge), key=edge)
        return multigraph

    def relabel(self, mapping):
        """按 mapping 重新命名旗"""
        return Graph([[mapping[f] for f in part] for part in self.vertices],
                     [(mapping[a], mapping[b]) for a, b in self.edges],
                     self.genus_labels)

    # ---------- JSON 交换格式 ----------
    def to_dict(self):
        order = sorted(range(len(self.vertices)), key=lambda v: (self.vertices[v], self.genus_labels[v]))
        return {
            "flags": list(self.flags),
            "involution": [list(edge) for edge in self.edges],
            "vertices": [list(self.vertices[v]) for v in order],
            "genus": [self.genus_labels[v] for v in order],
        }

    @classmethod
    def from_dict(cls, data):
        try:
            graph = cls(data["vertices"], [tuple(pair) for pair in data.get("involution", [])],
                        data.get("genus"))
        except (KeyError, TypeError, ValueError) as e:
            raise GraphException(f"图 JSON 格式错误: {str(e)}", e)
        if "flags" in data and sorted(data["flags"]) != list(graph.flags):
            raise GraphException("flags 字段与顶点划分不一致")
        return graph

    def __eq__(self, other):
        return (isinstance(other, Graph) and self._sigma == other._sigma
                and sorted(zip(self.vertices, self.genus_labels)) == sorted(zip(other.vertices, other.genus_labels)))

    def __hash__(self):
        return hash((tuple(sorted(zip(self.vertices, self.genus_labels))), self.edges))

    def __repr__(self):
        return f"Graph(vertices={list(map(list, self.vertices))}, edges={list(self.edges)}, genus={list(self.genus_labels)})"


@dataclass(frozen=True)
class NumberedGraph:
    """带叶子编号的图, 编号是叶子到 {1,...,n} 的双射"""
    graph: Graph
    numbering: tuple

    def __init__(self, graph, numbering):
        numbering = tuple(sorted(dict(numbering).items()))
        leaves = set(graph.leaves)
        if {flag for flag, _ in numbering} != leaves:
            raise GraphException(f"编号的定义域必须恰为叶子集合: {sorted(leaves)}")
        if sorted(number for _, number in numbering) != list(range(1, len(leaves) + 1)):
            raise GraphException("编号必须是到 {1,...,n} 的双射")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "numbering", numbering)

    @property
    def number_of(self):
        return dict(self.numbering)

    @property
    def flag_of(self):
        return {number: flag for flag, number in self.numbering}

    def to_dict(self):
        data = self.graph.to_dict()
        data["leaf_numbering"] = {str(flag): number for flag, number in self.numbering}
        return data

    @classmethod
    def from_dict(cls, data):
        graph = Graph.from_dict(data)
        try:
            numbering = {int(flag): int(number) for flag, number in data["leaf_numbering"].items()}
        except (KeyError, TypeError, ValueError) as e:
            raise GraphException(f"leaf_numbering 字段格式错误: {str(e)}", e)
        return cls(graph, numbering)


def split_numbering(g):
    """返回 (Graph, 编号字典或 None)"""
    if isinstance(g, NumberedGraph):
        return g.graph, g.number_of
    return g, None


def graph_from_dict(data):
    """按是否带 leaf_numbering 还原 Graph 或 NumberedGraph"""
    if data.get("leaf_numbering"):
        return NumberedGraph.from_dict(data)
    return Graph.from_dict(data)


# ========== 亏格与稳定性 ==========
def is_connected(g):
    graph, _ = split_numbering(g)
    return bool(graph.vertices) and nx.is_connected(graph.to_networkx())


def _require_connected(graph):
    if not is_connected(graph):
        components = nx.number_connected_components(graph.to_networkx())
        logger.error(f"图不连通, 连通分支数为 {components}")
        raise DisconnectedGraph(f"图不连通 (b0 = {components})")


def betti1(g):
    """b1(G) = |E| - |V| + 1"""
    graph, _ = split_numbering(g)
    _require_connected(graph)
    return len(graph.edges) - len(graph.vertices) + 1


def genus(g):
    graph, _ = split_numbering(g)
    return sum(graph.genus_labels) + betti1(graph)


def graph_type(g):
    graph, _ = split_numbering(g)
    return GraphType(genus(graph), len(graph.leaves))


def is_stable(g):
    graph, _ = split_numbering(g)
    return all(2 * graph.genus_labels[v] - 2 + graph.valence(v) > 0 for v in range(len(graph.vertices)))


# ========== 稳定化 ==========
def stabilize(g, trace=None):
    """反复删除只有一两个旗的亏格0顶点, 直到稳定

    trace 若为列表, 每一步删除都会追加一条文字记录。
    """
    graph, numbering = split_numbering(g)
    gtype = graph_type(graph)
    if not gtype.is_stable_type:
        logger.error(f"类型 ({gtype.genus},{gtype.leaf_count}) 无法稳定化")
        raise Unstabilizable(f"类型 ({gtype.genus},{gtype.leaf_count}) 满足 2g-2+n <= 0, 无法稳定化")

    parts = [set(part) for part in graph.vertices]
    labels = list(graph.genus_labels)
    sigma = {f: graph.sigma(f) for f in graph.flags}
    numbering = dict(numbering) if numbering is not None else None

    def owner(flag):
        return next(i for i, part in enumerate(parts) if flag in part)

    while True:
        unstable = [i for i, part in enumerate(parts) if labels[i] == 0 and len(part) <= 2]
        if not unstable:
            break
        v = unstable[0]
        flags = sorted(parts[v])
        if len(parts) == 1:
            raise Unstabilizable("稳定化删空了整个图")
        if len(flags) == 1:
            (h,) = flags
            partner = sigma[h]
            if partner == h:
                raise Unstabilizable("孤立的单叶顶点无法删除")
            parts[owner(partner)].discard(partner)
            del sigma[h], sigma[partner]
            if trace is not None:
                trace.append(f"删除单旗顶点 {sorted(flags)}, 同时删除对端旗 {partner}")
        else:
            h1, h2 = flags
            p1, p2 = sigma[h1], sigma[h2]
            if p1 == h2:
                raise Unstabilizable("亏格0的单自环顶点无法删除")
            if p1 == h1 and p2 == h2:
                raise Unstabilizable("两个叶子的亏格0顶点无法删除")
            if p1 == h1 or p2 == h2:
                leaf, partner = (h1, p2) if p1 == h1 else (h2, p1)
                sigma[partner] = partner
                if numbering is not None:
                    numbering[partner] = numbering.pop(leaf)
                if trace is not None:
                    trace.append(f"删除双旗顶点 {flags}, 旗 {partner} 继承叶子 {leaf}")
            else:
                sigma[p1], sigma[p2] = p2, p1
                if trace is not None:
                    kind = "自环" if owner(p1) == owner(p2) else "边"
                    trace.append(f"删除双旗顶点 {flags}, 将 {p1} 与 {p2} 接成{kind}")
            del sigma[h1], sigma[h2]
        del parts[v], labels[v]

    result = Graph(parts, [(a, b) for a, b in sigma.items() if a < b], labels)
    if numbering is not None:
        return NumberedGraph(result, numbering)
    return result


# ========== 收缩 ==========
def contract_edges(g, edges):
    """收缩边集; 每个被收缩的连通块变成一个顶点, 其亏格为子图亏格"""
    graph, numbering = split_numbering(g)
    chosen = set()
    known = set(graph.edges)
    for edge in edges:
        key = tuple(sorted(edge))
        if key not in known:
            logger.error(f"边 {edge} 不在图中")
            raise UnknownEdge(f"边 {edge} 不在图中")
        chosen.add(key)

    clusters = nx.MultiGraph()
    clusters.add_nodes_from(range(len(graph.vertices)))
    for edge in chosen:
        clusters.add_edge(*graph.edge_endpoints(edge))

    parts, labels = [], []
    for component in sorted(nx.connected_components(clusters), key=min):
        sub = clusters.subgraph(component)
        internal_b1 = sub.number_of_edges() - sub.number_of_nodes() + 1
        parts.append([f for v in sorted(component) for f in graph.vertices[v]
                      if tuple(sorted((f, graph.sigma(f)))) not in chosen])
        labels.append(sum(graph.genus_labels[v] for v in component) + internal_b1)

    result = Graph(parts, [e for e in graph.edges if e not in chosen], labels)
    if numbering is not None:
        return NumberedGraph(result, numbering)
    return result


# ========== 同构 ==========
def _vertex_invariants(graph, leaf_labels):
    invariants = []
    for v in range(len(graph.vertices)):
        leaves = graph.vertex_leaves(v)
        labelled = sorted(leaf_labels[f] for f in leaves if f in leaf_labels)
        invariants.append((graph.genus_labels[v], graph.loop_count(v),
                           len(leaves) - len(labelled), tuple(labelled)))
    return invariants


def _rank(keys):
    order = {key: i for i, key in enumerate(sorted(set(keys)))}
    return [order[key] for key in keys]


def _refine(colors, mult):
    """颜色细化直到划分稳定"""
    n = len(colors)
    while True:
        signatures = [
            (colors[v], tuple(sorted((colors[u], mult[v][u]) for u in range(n) if u != v and mult[v][u])))
            for v in range(n)
        ]
        refined = _rank(signatures)
        if len(set(refined)) == len(set(colors)):
            return refined
        colors = refined


def _search(colors, mult, invariants):
    """个体化加细化的回溯搜索, 产生每个离散叶子的编码"""
    colors = _refine(colors, mult)
    n = len(colors)
    if len(set(colors)) == n:
        order = sorted(range(n), key=colors.__getitem__)
        yield (tuple(invariants[v] for v in order),
               tuple(mult[order[i]][order[j]] for i, j in combinations(range(n), 2)))
        return
    counts = {}
    for c in colors:
        counts[c] = counts.get(c, 0) + 1
    cell = min(c for c, k in counts.items() if k > 1)
    for v in range(n):
        if colors[v] != cell:
            continue
        split = [2 * c + (1 if c == cell and x != v else 0) for x, c in enumerate(colors)]
        yield from _search(split, mult, invariants)


def _canonical_search(graph, leaf_labels):
    n = len(graph.vertices)
    mult = [[0] * n for _ in range(n)]
    for edge in graph.edges:
        u, v = graph.edge_endpoints(edge)
        if u != v:
            mult[u][v] += 1
            mult[v][u] += 1
    invariants = _vertex_invariants(graph, leaf_labels)
    best, hits = None, 0
    for encoding in _search(_rank(invariants), mult, invariants):
        if best is None or encoding < best:
            best, hits = encoding, 1
        elif encoding == best:
            hits += 1
    return best, hits


def canonical_form(g):
    """规范字节串: 相等当且仅当同构 (保持亏格标签, 以及存在时的叶子编号)"""
    graph, numbering = split_numbering(g)
    best, _ = _canonical_search(graph, numbering or {})
    payload = {"numbered": numbering is not None, "vertices": best[0], "adjacency": best[1]}
    return json.dumps(payload, separators=(",", ":")).encode("ascii")


def automorphism_count(g, rooted=()):
    """自同构群的阶

    NumberedGraph 的叶子按编号区分; 普通 Graph 的叶子除 rooted 中的旗外不可区分。
    """
    graph, numbering = split_numbering(g)
    if numbering is not None:
        labels = numbering
    else:
        labels = {flag: i + 1 for i, flag in enumerate(sorted(rooted))}
        stray = set(labels) - set(graph.leaves)
        if stray:
            raise GraphException(f"rooted 中包含非叶子旗: {sorted(stray)}")
    _, vertex_automorphisms = _canonical_search(graph, labels)

    count = vertex_automorphisms
    for v in range(len(graph.vertices)):
        free_leaves = sum(1 for f in graph.vertex_leaves(v) if f not in labels)
        loops = graph.loop_count(v)
        count *= factorial(free_leaves) * factorial(loops) * 2 ** loops
    bundles = {}
    for edge in graph.edges:
        u, v = sorted(graph.edge_endpoints(edge))
        if u != v:
            bundles[(u, v)] = bundles.get((u, v), 0) + 1
    for size in bundles.values():
        count *= factorial(size)
    return count


# ========== 偏序 ==========
def leq(g1, g2):
    """[g1] <= [g2]: g2 可由 g1 收缩某个边集得到"""
    t1, t2 = graph_type(g1), graph_type(g2)
    if t1 != t2:
        logger.error(f"类型不一致: {t1} vs {t2}")
        raise TypeMismatch(f"类型不一致: ({t1.genus},{t1.leaf_count}) vs ({t2.genus},{t2.leaf_count})")
    numbered = isinstance(g1, NumberedGraph) and isinstance(g2, NumberedGraph)
    if not numbered:
        g1, g2 = split_numbering(g1)[0], split_numbering(g2)[0]

    target = canonical_form(g2)
    target_edges = len(split_numbering(g2)[0].edges)
    seen = set()
    stack = [g1]
    while stack:
        current = stack.pop()
        key = canonical_form(current)
        if key in seen:
            continue
        seen.add(key)
        edges = split_numbering(current)[0].edges
        if len(edges) == target_edges:
            if key == target:
                return True
            continue
        stack.extend(contract_edges(current, [edge]) for edge in edges)
    return False

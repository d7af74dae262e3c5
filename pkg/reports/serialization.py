"""
JSON / CSV 序列化与输出
"""
import json
import sys

from config import FORMAT_VERSION
from core.logger_config import logger
from core.exceptions import ParseError, ComputationException
from strata.graph import graph_from_dict, NumberedGraph
from strata.trees import AnnotatedTree, annotate


def dump_json(data):
    """确定性的 JSON 文本, 总是带 format 字段"""
    payload = {"format": FORMAT_VERSION, **data}
    return json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def load_json(text, what="JSON"):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        logger.error(f"{what} 解析失败: {str(e)}")
        raise ParseError(f"无法解析{what}: {str(e)}", e)
    if not isinstance(data, dict):
        raise ParseError(f"{what} 顶层必须是对象")
    version = data.get("format", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise ParseError(f"不支持的格式版本 {version}, 期望 {FORMAT_VERSION}")
    return data


def read_graph_file(path):
    """读取图 JSON 文件, 带 leaf_numbering 时返回 NumberedGraph"""
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as e:
        logger.error(f"无法读取文件 {path}: {str(e)}")
        raise ParseError(f"无法读取文件 {path}", e)
    return graph_from_text(text)


def graph_from_text(text):
    data = load_json(text, "图")
    try:
        return graph_from_dict(data)
    except ComputationException as e:
        raise ParseError(f"图 JSON 无效: {str(e)}", e)


def graph_to_text(graph):
    return dump_json(graph.to_dict())


def annotated_to_text(tree: AnnotatedTree):
    return dump_json(tree.to_dict())


def annotated_from_text(text):
    """解析带标注的树; 标注字段会被重新计算并核对"""
    data = load_json(text, "标注树")
    tree = graph_from_dict(data)
    if not isinstance(tree, NumberedGraph):
        raise ParseError("标注树必须带 leaf_numbering")
    annotated = annotate(tree)
    if "rho" in data and data["rho"] != annotated.to_dict()["rho"]:
        raise ParseError("rho 字段与重新计算的结果不一致")
    return annotated


def emit(text, out=None):
    """写到 --out 指定的文件或标准输出"""
    if out:
        with open(out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        logger.info(f"输出已写入 {out}")
    else:
        sys.stdout.write(text)

"""
JSON 交换格式测试
"""
import json
import pytest
import sys
import os

# 添加项目根目录到Python路径
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

try:
    from config import FORMAT_VERSION
    from core.exceptions import ParseError
    from strata.graph import Graph, NumberedGraph
    from strata.trees import build_tree, annotate
    from reports.serialization import (
        dump_json, load_json, read_graph_file, graph_from_text, graph_to_text,
        annotated_to_text, annotated_from_text, emit,
    )
except ImportError as e:
    print(f"导入模块失败: {e}")
    print(f"项目根目录: {project_root}")
    raise


def four_leaf_tree():
    """{1,2} | {3,4}"""
    return build_tree([[1, 2], [3, 4]], [(0, 1)])


class TestJsonBasics:
    """格式字段与确定性输出"""

    def test_01_format_field_and_sorted_keys(self):
        text = dump_json({"b": 1, "a": [1, 2]})
        data = json.loads(text)
        assert data["format"] == FORMAT_VERSION
        assert list(data) == ["a", "b", "format"]
        assert text.endswith("\n")

    def test_02_deterministic(self):
        assert dump_json({"x": {"z": 1, "y": 2}}) == dump_json({"x": {"y": 2, "z": 1}})

    def test_03_non_ascii_kept(self):
        assert "错误" in dump_json({"message": "错误"})

    @pytest.mark.parametrize("text", ["{", "[1, 2]", '{"format": 99}', "42"])
    def test_04_load_errors(self, text):
        """无法解析, 顶层不是对象, 或版本不符"""
        with pytest.raises(ParseError):
            load_json(text)

    def test_05_missing_format_accepted(self):
        assert load_json('{"n": 5}') == {"n": 5}


class TestGraphText:
    """图的读写"""

    def test_01_plain_graph(self):
        g = Graph([[1, 2, 3], [4, 5, 6]], [(1, 4), (2, 5), (3, 6)], [0, 1])
        back = graph_from_text(graph_to_text(g))
        assert isinstance(back, Graph)
        assert back == g

    def test_02_numbered_graph(self):
        tree = four_leaf_tree()
        back = graph_from_text(graph_to_text(tree))
        assert isinstance(back, NumberedGraph)
        assert back == tree

    def test_03_invalid_graph(self):
        with pytest.raises(ParseError):
            graph_from_text('{"vertices": [[1, 2]], "involution": [[1, 3]]}')

    def test_04_read_file(self, tmp_path):
        path = tmp_path / "tree.json"
        path.write_text(graph_to_text(four_leaf_tree()), encoding="utf-8")
        assert read_graph_file(str(path)) == four_leaf_tree()

    def test_05_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            read_graph_file(str(tmp_path / "missing.json"))


class TestAnnotatedText:
    """带标注的树"""

    def test_01_fields(self):
        data = json.loads(annotated_to_text(annotate(four_leaf_tree())))
        assert data["rho"] == [2, 2]
        assert data["nu"] == [1, 1]
        assert data["parity"] == {"0": 0}
        assert data["leaf_numbering"] == {"1": 1, "2": 2, "3": 3, "4": 4}

    def test_02_read_back(self):
        annotated = annotate(four_leaf_tree())
        assert annotated_from_text(annotated_to_text(annotated)) == annotated

    def test_03_wrong_rho(self):
        data = json.loads(annotated_to_text(annotate(four_leaf_tree())))
        data["rho"] = [4, 0]
        with pytest.raises(ParseError):
            annotated_from_text(json.dumps(data))

    def test_04_requires_numbering(self):
        with pytest.raises(ParseError):
            annotated_from_text(graph_to_text(Graph([[1, 2, 5], [3, 4, 6]], [(5, 6)])))


class TestEmit:
    """输出目标"""

    def test_01_stdout(self, capsys):
        emit("abc\n")
        assert capsys.readouterr().out == "abc\n"

    def test_02_file(self, tmp_path):
        path = tmp_path / "out.json"
        emit(dump_json({"n": 4}), str(path))
        assert json.loads(path.read_text(encoding="utf-8"))["n"] == 4

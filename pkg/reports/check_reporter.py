"""
检查结果与谱序列表格的 Excel 报告
"""
import os
import re
from dataclasses import dataclass
from datetime import datetime
from typing import Dict, List

import openpyxl
from openpyxl.styles import Font, Alignment, PatternFill, Border, Side
from openpyxl.utils import get_column_letter

from config import REPORTS_DIR
from core.logger_config import logger

_THIN = Side(style='thin')
_BORDER = Border(left=_THIN, right=_THIN, top=_THIN, bottom=_THIN)
_HEADER_FONT = Font(bold=True, color="FFFFFF")
_HEADER_FILL = PatternFill(start_color="366092", end_color="366092", fill_type="solid")
_PASS_FILL = PatternFill(start_color="C6EFCE", end_color="C6EFCE", fill_type="solid")
_FAIL_FILL = PatternFill(start_color="FFC7CE", end_color="FFC7CE", fill_type="solid")
_WARN_FILL = PatternFill(start_color="FFEB9C", end_color="FFEB9C", fill_type="solid")


@dataclass
class CheckResult:
    """单项检查结果"""
    check_name: str
    module: str
    status: str
    elapsed: str
    detail: str = ""
    description: str = ""

    @property
    def passed(self):
        return self.status == "PASSED"


def _clean_text(text):
    """移除 ANSI 转义与 Excel 不支持的控制字符, 并截断过长文本"""
    if not text:
        return ""
    cleaned = re.sub(r'\x1B(?:[@-Z\\-_]|\[[0-?]*[ -/]*[@-~])', '', str(text))
    cleaned = re.sub(r'[\x00-\x08\x0B\x0C\x0E-\x1F\x7F]', '', cleaned)
    if len(cleaned) > 300:
        cleaned = cleaned[:300] + "...(已截断)"
    return cleaned


def _write_header(ws, row, headers):
    for col_num, header in enumerate(headers, 1):
        cell = ws.cell(row=row, column=col_num, value=header)
        cell.font = _HEADER_FONT
        cell.fill = _HEADER_FILL
        cell.alignment = Alignment(horizontal="center", vertical="center")
        cell.border = _BORDER


def _set_widths(ws, widths):
    for col_num, width in enumerate(widths, 1):
        ws.column_dimensions[get_column_letter(col_num)].width = width


class CheckReporter:
    """收集检查结果并导出 Excel"""

    def __init__(self):
        self.results: List[CheckResult] = []

    def add_result(self, result: CheckResult):
        self.results.append(result)
        logger.debug(f"添加检查结果: {result.module}.{result.check_name} - {result.status}")

    def summary(self) -> Dict:
        total = len(self.results)
        passed = sum(1 for r in self.results if r.passed)
        return {
            "total": total,
            "passed": passed,
            "failed": total - passed,
            "pass_rate": (passed / total * 100) if total else 0.0,
        }

    def module_statistics(self) -> Dict:
        stats = {}
        for result in self.results:
            entry = stats.setdefault(result.module, {"total": 0, "passed": 0, "failed": 0})
            entry["total"] += 1
            entry["passed" if result.passed else "failed"] += 1
        for entry in stats.values():
            entry["pass_rate"] = entry["passed"] / entry["total"] * 100
        return dict(sorted(stats.items()))

    def save_results_to_excel(self, path=None, tables=()) -> str:
        """保存检查结果 (以及可选的谱序列表格) 到 Excel 文件, 失败时返回空字符串"""
        try:
            filepath = path or self._default_path("check_results")
            wb = openpyxl.Workbook()
            self._create_detail_sheet(wb.active)
            self._create_summary_sheet(wb.create_sheet("汇总统计"))
            for table in tables:
                write_table_sheet(wb, table)
            wb.save(filepath)
            logger.info(f"Excel检查报告已保存: {filepath}")
            return filepath
        except Exception as e:
            logger.error(f"保存Excel报告失败: {str(e)}")
            return ""

    @staticmethod
    def _default_path(prefix):
        if not os.path.exists(REPORTS_DIR):
            os.makedirs(REPORTS_DIR)
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        return os.path.join(REPORTS_DIR, f"{prefix}_{timestamp}.xlsx")

    def _create_detail_sheet(self, ws):
        ws.title = "详细检查结果"
        headers = ["模块", "检查项", "状态", "耗时", "详情", "说明"]
        _write_header(ws, 1, headers)
        for row_num, result in enumerate(self.results, 2):
            values = [result.module, _clean_text(result.check_name), result.status, result.elapsed,
                      _clean_text(result.detail), _clean_text(result.description)]
            for col_num, value in enumerate(values, 1):
                cell = ws.cell(row=row_num, column=col_num, value=value)
                cell.border = _BORDER
                cell.alignment = Alignment(horizontal="left", vertical="center", wrap_text=True)
                if col_num == 3:
                    cell.fill = _PASS_FILL if result.passed else _FAIL_FILL
                    cell.font = Font(color="006100" if result.passed else "9C0006")
        _set_widths(ws, [18, 30, 12, 12, 50, 30])

    def _create_summary_sheet(self, ws):
        ws.merge_cells('A1:E1')
        ws['A1'] = "检查执行汇总统计"
        ws['A1'].font = Font(size=16, bold=True)
        ws['A1'].alignment = Alignment(horizontal="center", vertical="center")

        summary = self.summary()
        stats = [
            ["总检查数", summary["total"]],
            ["通过数", summary["passed"]],
            ["失败数", summary["failed"]],
            ["通过率", f"{summary['pass_rate']:.2f}%"],
            ["生成时间", datetime.now().strftime("%Y-%m-%d %H:%M:%S")],
        ]
        for row_num, (label, value) in enumerate(stats, 3):
            ws[f'A{row_num}'] = label
            ws[f'B{row_num}'] = value
            ws[f'A{row_num}'].font = Font(bold=True)
            if label == "通过率":
                rate = summary['pass_rate']
                ws[f'B{row_num}'].fill = _PASS_FILL if rate == 100 else (_WARN_FILL if rate >= 70 else _FAIL_FILL)

        start = 3 + len(stats) + 1
        _write_header(ws, start, ["模块", "总数", "通过", "失败", "通过率"])
        for row_num, (module, entry) in enumerate(self.module_statistics().items(), start + 1):
            for col_num, value in enumerate([module, entry["total"], entry["passed"], entry["failed"],
                                             f"{entry['pass_rate']:.1f}%"], 1):
                ws.cell(row=row_num, column=col_num, value=value).border = _BORDER
        _set_widths(ws, [18, 15, 15, 15, 15])

    def clear_results(self):
        self.results.clear()
        logger.info("检查结果已清空")


def write_table_sheet(wb, table):
    """把 SpectralTable 写成一个工作表: 行为 q, 列为 p"""
    ws = wb.create_sheet(f"{table.kind}1_{table.index}")
    ps = sorted({p for p, _ in table.cells})
    qs = sorted({q for _, q in table.cells}, reverse=True)
    _write_header(ws, 1, ["q \\ p"] + [str(p) for p in ps])
    for row_num, q in enumerate(qs, 2):
        ws.cell(row=row_num, column=1, value=q).font = Font(bold=True)
        for col_num, p in enumerate(ps, 2):
            dim = table.dimension(p, q)
            cell = ws.cell(row=row_num, column=col_num, value=dim or None)
            cell.border = _BORDER
            cell.alignment = Alignment(horizontal="center")
            if dim and (p + q) == table.weight(p, q):
                cell.fill = _PASS_FILL
    _set_widths(ws, [10] + [8] * len(ps))
    return ws


def save_tables_to_excel(tables, path) -> str:
    """只导出表格"""
    try:
        wb = openpyxl.Workbook()
        wb.remove(wb.active)
        for table in tables:
            write_table_sheet(wb, table)
        wb.save(path)
        logger.info(f"Excel表格已保存: {path}")
        return path
    except Exception as e:
        logger.error(f"保存Excel表格失败: {str(e)}")
        return ""


# 全局检查报告实例
check_reporter = CheckReporter()

"""
pytest全局配置 - 公共fixture与检查结果收集
"""
import pytest
import sys
import os
import time

# 添加项目根目录到Python路径
project_root = os.path.dirname(os.path.abspath(__file__))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from reports.check_reporter import check_reporter, CheckResult
from core.logger_config import logger
from lie.lyndon import GradedAlphabet
from lie.algebra import LieAlgebra


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: 穷举型检查 (Γ(0,10), 高亏格证书)")


@pytest.fixture(scope="session")
def ab_alphabet():
    """a 奇, b 偶"""
    return GradedAlphabet.parse("a:odd,b:even")


@pytest.fixture(scope="session")
def ab_algebra(ab_alphabet):
    return LieAlgebra(ab_alphabet)


@pytest.fixture(scope="session")
def odd_alphabet():
    """三个奇字母"""
    return GradedAlphabet.parse("x:odd,y:odd,z:odd")


@pytest.fixture(scope="session")
def mixed_alphabet():
    return GradedAlphabet.parse("a:odd,b:even,c:even")


@pytest.fixture(scope="session")
def mixed_algebra(mixed_alphabet):
    return LieAlgebra(mixed_alphabet)


@pytest.hookimpl(tryfirst=True, hookwrapper=True)
def pytest_runtest_makereport(item, call):
    """收集测试结果的钩子函数"""
    outcome = yield
    rep = outcome.get_result()

    if rep.when == "call":
        test_name = item.name
        module = item.module.__name__.split(".")[-1].replace("test_", "")
        status = "PASSED" if rep.passed else "FAILED"

        error_message = ""
        if rep.failed and rep.longrepr:
            try:
                error_message = str(rep.longrepr)
                lines = [line for line in error_message.split('\n') if "Error" in line or "assert" in line]
                if lines:
                    error_message = '\n'.join(lines[:3])
            except Exception as e:
                error_message = f"错误信息处理失败: {str(e)}"

        check_reporter.add_result(CheckResult(
            check_name=test_name,
            module=module,
            status=status,
            elapsed=f"{rep.duration:.2f}s",
            detail=error_message,
            description=(item.function.__doc__ or "").strip(),
        ))


def pytest_sessionfinish(session, exitstatus):
    """测试会话结束时保存结果到Excel"""
    try:
        if check_reporter.results:
            start = time.time()
            filepath = check_reporter.save_results_to_excel()
            if filepath:
                logger.info(f"测试摘要: {check_reporter.summary()} (写入耗时 {time.time() - start:.2f}s)")
        else:
            logger.warning("没有测试结果需要保存")
    except Exception as e:
        logger.error(f"pytest_sessionfinish执行失败: {str(e)}")

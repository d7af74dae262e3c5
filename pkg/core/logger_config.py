"""
日志配置模块
"""
import logging
import os
from datetime import datetime
from config import LOGS_DIR, LOG_LEVEL_ENV, color_enabled

_LEVEL_COLORS = {
    "DEBUG": "\033[36m",
    "INFO": "\033[32m",
    "WARNING": "\033[33m",
    "ERROR": "\033[31m",
    "CRITICAL": "\033[35m",
}


class ColorFormatter(logging.Formatter):
    """按级别着色的控制台格式"""

    def format(self, record):
        text = super().format(record)
        color = _LEVEL_COLORS.get(record.levelname)
        return f"{color}{text}\033[0m" if color else text


def setup_logger():
    """设置日志配置"""
    # 创建日志目录
    if not os.path.exists(LOGS_DIR):
        os.makedirs(LOGS_DIR)

    # 生成日志文件名
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    log_filename = os.path.join(LOGS_DIR, f"hyperlocus_{timestamp}.log")

    # 配置日志格式
    fmt = '%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s'
    formatter = logging.Formatter(fmt)

    # 控制台默认只显示 WARNING 以上, 环境变量可覆盖
    env_level = os.environ.get(LOG_LEVEL_ENV)
    console_level = getattr(logging, env_level.upper(), logging.WARNING) if env_level else logging.WARNING

    logger = logging.getLogger("hyperlocus")
    logger.setLevel(min(console_level, logging.INFO))
    logger.propagate = False

    # 清除现有的处理器
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)

    # 文件处理器
    file_handler = logging.FileHandler(log_filename, encoding='utf-8')
    file_handler.setLevel(logging.INFO)
    file_handler.setFormatter(formatter)
    logger.addHandler(file_handler)

    # 控制台处理器 (stderr, 不干扰 stdout 上的 JSON/CSV)
    console_handler = logging.StreamHandler()
    console_handler.setLevel(console_level)
    console_handler.setFormatter(ColorFormatter(fmt) if color_enabled() else formatter)
    logger.addHandler(console_handler)

    return logger


# 创建全局logger实例
logger = setup_logger()

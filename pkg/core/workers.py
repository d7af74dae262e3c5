"""
工作进程池工具类
"""
import os
from concurrent.futures import ProcessPoolExecutor

from config import default_jobs
from core.logger_config import logger
from core.exceptions import ComputationException


class WorkerPool:
    """工作进程池管理器

    结果总是按输入顺序返回, 与进程数无关。
    """

    @staticmethod
    def resolve_jobs(jobs=None):
        """确定进程数: 显式参数优先, 其次环境变量"""
        if jobs is None:
            jobs = default_jobs()
        if jobs <= 0:
            jobs = os.cpu_count() or 1
        return jobs

    @staticmethod
    def map(func, items, jobs=None):
        """并行映射, 顺序合并"""
        items = list(items)
        jobs = WorkerPool.resolve_jobs(jobs)
        if jobs == 1 or len(items) <= 1:
            return [func(item) for item in items]
        try:
            logger.info(f"启动 {jobs} 个工作进程处理 {len(items)} 项任务")
            with ProcessPoolExecutor(max_workers=jobs) as executor:
                return list(executor.map(func, items))
        except ComputationException:
            raise
        except Exception as e:
            logger.error(f"工作进程执行失败: {str(e)}")
            raise ComputationException(f"工作进程执行失败: {str(e)}", e)

"""
全局配置文件
"""
import os

# ========== 输出格式配置 ==========
FORMAT_VERSION = 1

# ========== 计算范围配置 ==========
# 数值树 Γ(0,n) 的叶子数上限
MIN_TREE_LEAVES = 3
MAX_TREE_LEAVES = 12

# 穷举检查的亏格上限
MIN_HYPERELLIPTIC_GENUS = 2
MAX_PUSHFORWARD_GENUS = 4
MAX_INJECTIVITY_GENUS = 3

# 证书与首项检查
MIN_CERTIFICATE_GENUS = 2
MAX_CERTIFICATE_GENUS = 10
# 源列为空: 不超过此亏格时穷举全部 g 条边的树, 之上逐层生成好树
MAX_EXHAUSTIVE_SOURCE_GENUS = 5
MAX_GOOD_TREE_LEAVES = 2 * MAX_CERTIFICATE_GENUS + 2

# 暴力线性代数 oracle 的总字母数上限
MAX_ORACLE_LETTERS = 8

# 谱序列表格范围 (闭区间)
E1_RANGE = (4, 10)
F1_RANGE = (2, 4)
EPOLY_RANGE = (4, 8)
BETTI_RANGE = (3, 12)

# ========== 字母表配置 ==========
# V_{l,g} 使用的字母: a 为奇, b 为偶, b 另带奇权重
V_ALPHABET_SPEC = "a:odd,b:even"
V_WEIGHTED_LETTERS = ("b",)

# ========== 目录配置 ==========
REPORTS_DIR = os.environ.get("HYPERLOCUS_REPORTS_DIR", "reports_out")
LOGS_DIR = os.environ.get("HYPERLOCUS_LOGS_DIR", "logs")

# ========== 环境变量配置 ==========
JOBS_ENV = "HYPERLOCUS_JOBS"
COLOR_ENV = "HYPERLOCUS_COLOR"
LOG_LEVEL_ENV = "HYPERLOCUS_LOG_LEVEL"


def default_jobs():
    """读取工作进程数, 非法值回退为1"""
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def color_enabled():
    """是否启用彩色日志"""
    return os.environ.get(COLOR_ENV, "0").lower() in ("1", "true", "yes", "on")

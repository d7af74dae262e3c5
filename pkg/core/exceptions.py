"""
自定义异常类
"""


class ComputationException(Exception):
    """计算异常基类"""
    def __init__(self, message, original_exception=None):
        super().__init__(message)
        self.original_exception = original_exception

    def __str__(self):
        if self.original_exception:
            return f"{super().__str__()} (原始异常: {str(self.original_exception)})"
        return super().__str__()


class OutOfRange(ComputationException):
    """参数超出支持范围"""
    pass


# ========== 图 ==========
class GraphException(ComputationException):
    """图运算相关异常"""
    pass


class DisconnectedGraph(GraphException):
    """图不连通"""
    pass


class Unstabilizable(GraphException):
    """稳定化会删空整个图"""
    pass


class UnknownEdge(GraphException):
    """收缩的边不在图中"""
    pass


class TypeMismatch(GraphException):
    """两个图的类型 (g,n) 不同"""
    pass


# ========== 树与分层 ==========
class StrataException(ComputationException):
    """树枚举与标注相关异常"""
    pass


class NotATree(StrataException):
    """输入不是树"""
    pass


class OddLeafTotal(StrataException):
    """叶子总数为奇数, 奇偶性无定义"""
    pass


# ========== 推前 ==========
class PushforwardException(ComputationException):
    """覆盖图与推前相关异常"""
    pass


# ========== Lie 超代数 ==========
class LieException(ComputationException):
    """Lie 超代数相关异常"""
    pass


class NotLyndon(LieException):
    """不是 Lyndon 词"""
    pass


class MixedMultidegree(LieException):
    """表达式的多重次数不齐次"""
    pass


class TooLarge(LieException):
    """oracle 规模过大"""
    pass


# ========== 谱序列 ==========
class SpectralException(ComputationException):
    """谱序列与证书相关异常"""
    pass


class LevelZero(SpectralException):
    """d1 作用于第0层"""
    pass


class FailedCertificate(SpectralException):
    """证书检查未通过, 携带证书本身"""
    def __init__(self, message, certificate=None, original_exception=None):
        super().__init__(message, original_exception)
        self.certificate = certificate


# ========== 命令行 ==========
class CliException(ComputationException):
    """命令行相关异常"""
    pass


class ParseError(CliException):
    """输入解析失败"""
    pass


class UsageError(CliException):
    """命令行用法错误, hint 为一行修正提示"""
    def __init__(self, message, hint="", original_exception=None):
        super().__init__(message, original_exception)
        self.hint = hint

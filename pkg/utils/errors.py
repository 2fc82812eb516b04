"""
异常定义
引擎各模块共用的错误类型
"""


class DomainError(ValueError):
    """参数超出定义域（状态 k、合作者数 j、步数等）"""


class ReducibleChainError(DomainError):
    """μ = 0 时马尔可夫链可约，不存在唯一平稳分布"""


class KernelError(ValueError):
    """转移核违反概率约束"""


class UsageError(ValueError):
    """命令行用法错误"""

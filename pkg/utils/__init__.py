# Utils module
from .errors import DomainError, ReducibleChainError, KernelError, UsageError
from .logger import Logger, LogContext, get_logger, setup_logging, log_execution_time

__all__ = [
    'DomainError', 'ReducibleChainError', 'KernelError', 'UsageError',
    'Logger', 'LogContext', 'get_logger', 'setup_logging', 'log_execution_time',
]

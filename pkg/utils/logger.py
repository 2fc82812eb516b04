"""
日志工具
统一的日志记录和管理
"""
import functools
import logging
import sys
import time
from datetime import datetime
from pathlib import Path
from typing import Optional


class Logger:
    """
    日志管理器

    功能：
    1. 控制台输出（stderr，stdout 留给 CSV）
    2. 文件日志记录
    3. 不同级别的日志过滤
    4. 结构化日志输出
    """

    # 类变量，用于单例模式
    _instances: dict = {}

    def __new__(cls, name: str = "cfdyn", *args, **kwargs):
        """实现单例模式 - 同名 logger 返回同一实例"""
        if name not in cls._instances:
            instance = super().__new__(cls)
            cls._instances[name] = instance
        return cls._instances[name]

    def __init__(self,
                 name: str = "cfdyn",
                 log_file: Optional[Path] = None,
                 level: int = logging.WARNING,
                 console: bool = True):
        """
        初始化日志器

        Args:
            name: 日志器名称
            log_file: 日志文件路径
            level: 日志级别
            console: 是否输出到控制台
        """
        # 避免重复初始化
        if hasattr(self, '_initialized'):
            return

        self._initialized = True
        self.logger = logging.getLogger(name)
        self.configure(log_file=log_file, level=level, console=console)

    def configure(self,
                  log_file: Optional[Path] = None,
                  level: int = logging.WARNING,
                  console: bool = True) -> None:
        """重新配置处理器（命令行每次运行调用一次）"""
        self.logger.setLevel(level)
        for handler in list(self.logger.handlers):
            handler.close()
        self.logger.handlers.clear()  # 清除已有处理器
        self.logger.propagate = False

        formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )

        if console:
            console_handler = logging.StreamHandler(sys.stderr)
            console_handler.setLevel(level)
            console_handler.setFormatter(formatter)
            self.logger.addHandler(console_handler)

        if log_file:
            log_file.parent.mkdir(parents=True, exist_ok=True)
            file_handler = logging.FileHandler(log_file, encoding='utf-8')
            file_handler.setLevel(level)
            file_handler.setFormatter(formatter)
            self.logger.addHandler(file_handler)

    # ==================== 日志方法 ====================

    def debug(self, message: str) -> None:
        """调试级别日志"""
        self.logger.debug(message)

    def info(self, message: str) -> None:
        """信息级别日志"""
        self.logger.info(message)

    def warning(self, message: str) -> None:
        """警告级别日志"""
        self.logger.warning(message)

    def error(self, message: str, exc_info: bool = False) -> None:
        """错误级别日志"""
        self.logger.error(message, exc_info=exc_info)

    # ==================== 结构化日志 ====================

    def log_experiment_start(self, command: str, params: dict = None) -> None:
        """记录实验开始"""
        self.info(f"Experiment Started: {command}")
        if params:
            self.debug(f"Parameters: {params}")

    def log_experiment_complete(self, command: str, rows: int,
                                duration: float) -> None:
        """记录实验完成"""
        self.info(f"Experiment Completed: {command} - Rows: {rows}, Duration: {duration:.2f}s")

    def log_sweep_progress(self, parameter: str, current: int, total: int) -> None:
        """记录扫描进度"""
        progress = (current / total * 100) if total > 0 else 0
        self.debug(f"Sweep Progress: {parameter} - {current}/{total} ({progress:.1f}%)")

    def log_simulation_progress(self, seed: int, done: int, total: int) -> None:
        """记录模拟进度"""
        progress = (done / total * 100) if total > 0 else 0
        self.debug(f"Simulation Progress: seed={seed} - {done}/{total} ({progress:.1f}%)")

    def log_run_recorded(self, run_id: int, db_path: str) -> None:
        """记录历史入库"""
        self.info(f"Run Recorded: #{run_id} -> {db_path}")


# ==================== 便捷函数 ====================

def get_logger(name: str = "cfdyn",
               log_file: Optional[Path] = None,
               level: int = logging.WARNING) -> Logger:
    """
    获取日志器实例

    Args:
        name: 日志器名称
        log_file: 日志文件路径
        level: 日志级别

    Returns:
        Logger 实例
    """
    return Logger(name=name, log_file=log_file, level=level)


def setup_logging(log_dir: Optional[Path] = None,
                  level: int = logging.WARNING) -> Logger:
    """
    设置全局日志

    Args:
        log_dir: 日志目录，为 None 时只输出到控制台
        level: 日志级别

    Returns:
        主日志器实例
    """
    log_file = None
    if log_dir is not None:
        # 创建带日期的日志文件
        date_str = datetime.now().strftime("%Y%m%d")
        log_file = Path(log_dir) / f"cfdyn_{date_str}.log"

    logger = get_logger(name="cfdyn")
    logger.configure(log_file=log_file, level=level)
    return logger


# ==================== 上下文管理器 ====================

class LogContext:
    """日志上下文管理器 - 用于记录代码块的执行"""

    def __init__(self, logger: Logger, context_name: str):
        self.logger = logger
        self.context_name = context_name
        self.start_time = None

    def __enter__(self):
        self.start_time = time.perf_counter()
        self.logger.debug(f"Entering: {self.context_name}")
        return self

    @property
    def elapsed(self) -> float:
        """已用时间(秒)"""
        return time.perf_counter() - self.start_time

    def __exit__(self, exc_type, exc_val, exc_tb):
        if exc_type is None:
            self.logger.debug(f"Exiting: {self.context_name} - Duration: {self.elapsed:.3f}s")
        else:
            self.logger.error(f"Exiting with error: {self.context_name} - {exc_val}")

        return False  # 不抑制异常


# ==================== 装饰器 ====================

def log_execution_time(logger: Logger = None):
    """
    函数执行时间日志装饰器

    Args:
        logger: 日志器实例，为 None 则使用默认
    """
    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            active = logger or get_logger()
            func_name = f"{func.__module__}.{func.__name__}"
            start_time = time.perf_counter()

            try:
                result = func(*args, **kwargs)
                active.debug(f"{func_name} completed in {time.perf_counter() - start_time:.4f}s")
                return result
            except Exception as e:
                active.debug(f"{func_name} failed after {time.perf_counter() - start_time:.4f}s: {e}")
                raise

        return wrapper
    return decorator

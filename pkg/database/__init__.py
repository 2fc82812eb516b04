"""
__init__.py for database package
"""
from .schema import ExperimentRun, init_database, get_session_maker
from .manager import HistoryManager

__all__ = ['ExperimentRun', 'init_database', 'get_session_maker', 'HistoryManager']

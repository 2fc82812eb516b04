# Command-line module
from .parser import build_parser, parse_args
from .runner import run_experiment
from .output import to_csv, metadata_line, data_rows

__all__ = ['build_parser', 'parse_args', 'run_experiment', 'to_csv', 'metadata_line', 'data_rows']

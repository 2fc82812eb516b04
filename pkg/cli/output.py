"""
CSV 输出
一行 # 元数据注释 + 表头 + 数据行；浮点数使用最短往返表示，保证输出逐字节可复现
"""
import csv
import io
from enum import Enum
from typing import Iterable, List, Sequence

import numpy as np

from schemas.experiment import Command, ExperimentRequest


def format_value(value) -> str:
    """单元格格式化"""
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def metadata_line(request: ExperimentRequest, burn_in: int = None, initial_k: int = None) -> str:
    """完整参数回显（不含时间戳）"""
    cfg = request.cfg
    game = cfg.game
    items = [
        ('command', request.command),
        ('Z', cfg.population_size),
        ('N', game.group_size),
        ('M', game.threshold),
        ('F', game.enhancement),
        ('c', game.cost),
        ('mu', cfg.mutation),
        ('beta_sl', cfg.beta_sl),
        ('beta_ct', cfg.beta_ct),
        ('chi', cfg.chi),
        ('mode', cfg.update_mode),
        ('exact_pairing', cfg.exact_pairing),
    ]
    if request.command in (Command.STATIONARY, Command.COOP_INDEX):
        items.append(('solver', request.solver))
    if request.sweep is not None:
        items += [
            ('sweep', request.sweep.parameter),
            ('start', request.sweep.start),
            ('stop', request.sweep.stop),
            ('points', request.sweep.points),
        ]
    if request.command == Command.SIMULATE:
        items += [
            ('seed', request.seed),
            ('steps', request.steps),
            ('burn_in', burn_in),
            ('initial_k', initial_k),
            ('replicates', request.replicates),
        ]
    return '# cfdyn ' + ' '.join(f"{key}={format_value(value)}" for key, value in items)


def to_csv(header: Sequence[str], rows: Iterable[Sequence], metadata: str = None) -> str:
    """生成 CSV 文本（换行符固定为 \\n）"""
    buffer = io.StringIO()
    if metadata:
        buffer.write(metadata + '\n')
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(value) for value in row])
    return buffer.getvalue()


def data_rows(csv_text: str) -> List[List[str]]:
    """解析 CSV 文本中的数据行（跳过注释与表头）"""
    lines = [line for line in csv_text.splitlines() if line and not line.startswith('#')]
    return list(csv.reader(lines[1:]))

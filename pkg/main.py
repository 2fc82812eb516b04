#!/usr/bin/env python3
"""
cfdyn - 社会学习与反事实思维的合作动力学
主入口文件

有限种群 N 人猎鹿博弈：解析转移核、平稳分布、合作指数与蒙特卡洛核对
"""
import sys
import os

# 添加项目根目录到 Python 路径
ROOT_DIR = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, ROOT_DIR)

import json
import logging
from pathlib import Path
from typing import List, Optional

from cli import data_rows, parse_args, run_experiment
from config.engine_config import EngineConfig
from database.manager import HistoryManager
from schemas.experiment import Command
from utils.errors import DomainError, KernelError, UsageError
from utils.logger import LogContext, setup_logging

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2


def _load_engine_config(path: Optional[Path]) -> EngineConfig:
    try:
        return EngineConfig.load(path)
    except (OSError, ValueError, TypeError) as e:
        raise UsageError(f"无法读取引擎配置 {path}: {e}") from e


def _write_output(csv_text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(csv_text)
        sys.stdout.flush()
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, 'w', encoding='utf-8', newline='') as f:
        f.write(csv_text)


def main(argv: Optional[List[str]] = None) -> int:
    """主函数，返回进程退出码"""
    try:
        request = parse_args(argv)
        engine = _load_engine_config(request.config_path)
    except UsageError as e:
        print(f"cfdyn: 参数错误: {e}", file=sys.stderr)
        return EXIT_USAGE

    level_name = request.log_level or engine.log_level
    logger = setup_logging(engine.log_dir, getattr(logging, level_name.upper(), logging.WARNING))

    try:
        with LogContext(logger, request.command.value) as ctx:
            csv_text = run_experiment(request, engine)
            _write_output(csv_text, request.out)
        row_count = len(data_rows(csv_text))
        logger.log_experiment_complete(request.command.value, row_count, ctx.elapsed)

        db_path = request.history_db or engine.history_db
        if db_path and request.command != Command.HISTORY:
            parameters = json.loads(request.model_dump_json(exclude={'out', 'config_path', 'history_db'}))
            run_id = HistoryManager(db_path).record_run(
                command=request.command.value,
                parameters=parameters,
                csv_text=csv_text,
                row_count=row_count,
                duration=ctx.elapsed,
                output_path=str(request.out) if request.out else None,
            )
            logger.log_run_recorded(run_id, db_path)
    except UsageError as e:
        print(f"cfdyn: 参数错误: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, KernelError) as e:
        print(f"cfdyn: 计算失败: {e}", file=sys.stderr)
        return EXIT_RUNTIME
    except OSError as e:
        print(f"cfdyn: 输出失败: {e}", file=sys.stderr)
        return EXIT_RUNTIME

    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

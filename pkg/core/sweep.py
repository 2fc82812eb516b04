"""
参数扫描
每个参数点独立求解（适应度表 → 转移核 → 平稳分布 → 合作指数），在线程池中并行
"""
from concurrent.futures import ThreadPoolExecutor
from typing import List, Sequence, Tuple

import numpy as np

from schemas.experiment import SweepParameter
from schemas.population import PopulationConfig, UpdateMode
from schemas.results import CooperationSummary
from utils.errors import DomainError
from utils.logger import get_logger
from .dynamics import build_kernel
from .fitness import build_fitness_table
from .markov import cooperation_index, stationary_distribution

logger = get_logger()


def linear_grid(start: float, stop: float, points: int) -> List[float]:
    """含端点的等距网格"""
    if points < 1:
        raise DomainError("扫描点数必须 ≥ 1")
    if points == 1:
        return [float(start)]
    return np.linspace(start, stop, points).tolist()


def cooperation_at(cfg: PopulationConfig) -> CooperationSummary:
    """单个参数点的合作指数"""
    kernel = build_kernel(cfg, build_fitness_table(cfg))
    return cooperation_index(stationary_distribution(kernel))


def sweep_parameter(cfg: PopulationConfig, parameter: SweepParameter,
                    values: Sequence[float], workers: int = 1) -> List[Tuple[float, CooperationSummary]]:
    """
    扫描一个标量参数

    Returns:
        按 values 顺序排列的 (参数值, 合作指数)
    """
    parameter = SweepParameter(parameter)
    if parameter == SweepParameter.CHI and cfg.update_mode != UpdateMode.MIXED:
        # 非 MIXED 模式忽略 χ
        logger.warning(f"χ sweep requested in {cfg.update_mode.value} mode, switching to mixed")
        cfg = cfg.replace(update_mode=UpdateMode.MIXED)
    configs = [cfg.replace(**{parameter.config_field: value}) for value in values]
    total = len(configs)
    logger.info(f"Sweep Started: {parameter.value} over {total} points, workers={workers}")

    def evaluate(indexed: Tuple[int, PopulationConfig]) -> CooperationSummary:
        index, point_cfg = indexed
        summary = cooperation_at(point_cfg)
        logger.log_sweep_progress(parameter.value, index + 1, total)
        return summary

    if workers <= 1:
        summaries = [evaluate(item) for item in enumerate(configs)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            # map 保持输入顺序
            summaries = list(executor.map(evaluate, enumerate(configs)))
    return list(zip([float(v) for v in values], summaries))


def sweep_chi(cfg: PopulationConfig, values: Sequence[float],
              workers: int = 1) -> List[Tuple[float, CooperationSummary]]:
    """在 MIXED 模式下扫描 χ"""
    mixed = cfg.replace(update_mode=UpdateMode.MIXED)
    return sweep_parameter(mixed, SweepParameter.CHI, values, workers)

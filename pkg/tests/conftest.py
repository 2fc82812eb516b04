"""
测试公共夹具与精确整数预言机
"""
import itertools
import math
import os
import sys
from fractions import Fraction

import pytest

# 添加项目根目录到 Python 路径
ROOT_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, ROOT_DIR)

from config.engine_config import Presets
from schemas.game import GameSpec
from schemas.population import PopulationConfig, UpdateMode


def make_config(Z: int, N: int, M: int, F: float, c: float = 1.0, **kwargs) -> PopulationConfig:
    """平铺参数构造 PopulationConfig"""
    return PopulationConfig(
        population_size=Z,
        game=GameSpec(group_size=N, threshold=M, enhancement=F, cost=c),
        **kwargs,
    )


def exact_payoff_defector(j: int, N: int, M: int, F: float, c: float) -> Fraction:
    if j < M:
        return Fraction(0)
    return Fraction(j) * Fraction(F) * Fraction(c) / N


def exact_payoff_cooperator(j: int, N: int, M: int, F: float, c: float) -> Fraction:
    return exact_payoff_defector(j, N, M, F, c) - Fraction(c)


def comb_fitness(Z: int, k: int, N: int, M: int, F: float, c: float, cooperator: bool) -> float:
    """math.comb 直接实现的超几何平均收益"""
    total = math.comb(Z - 1, N - 1)
    acc = Fraction(0)
    for j in range(N):
        if cooperator:
            count = math.comb(k - 1, j) * math.comb(Z - k, N - 1 - j)
            payoff = exact_payoff_cooperator(j + 1, N, M, F, c)
        else:
            count = math.comb(k, j) * math.comb(Z - k - 1, N - 1 - j)
            payoff = exact_payoff_defector(j, N, M, F, c)
        acc += count * payoff
    return float(acc / total)


def enumerated_histogram(Z: int, k: int, N: int, cooperator: bool) -> list:
    """
    穷举焦点个体所有可能的同伴组合，统计同伴中合作者数 j 的频数

    个体 0..k-1 为合作者；焦点取第一个合作者（或第一个背叛者）。
    """
    focal = 0 if cooperator else k
    others = [i for i in range(Z) if i != focal]
    counts = [0] * N
    for mates in itertools.combinations(others, N - 1):
        counts[sum(1 for i in mates if i < k)] += 1
    return counts


def enumerated_fitness(Z: int, k: int, N: int, M: int, F: float, c: float, cooperator: bool,
                       histogram: list = None) -> float:
    """穷举组合上的平均收益"""
    if histogram is None:
        histogram = enumerated_histogram(Z, k, N, cooperator)
    acc = Fraction(0)
    for j, count in enumerate(histogram):
        if cooperator:
            acc += count * exact_payoff_cooperator(j + 1, N, M, F, c)
        else:
            acc += count * exact_payoff_defector(j, N, M, F, c)
    return float(acc / sum(histogram))


@pytest.fixture
def stag_hunt_cfg() -> PopulationConfig:
    """猎鹿博弈预设，SL 模式"""
    return PopulationConfig.from_preset(Presets.STAG_HUNT)


@pytest.fixture
def stag_hunt_ct_cfg(stag_hunt_cfg) -> PopulationConfig:
    return stag_hunt_cfg.replace(update_mode=UpdateMode.CT)


@pytest.fixture
def stag_hunt_mixed_cfg() -> PopulationConfig:
    return PopulationConfig.from_preset(Presets.STAG_HUNT_MIXED)

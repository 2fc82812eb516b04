"""
策略修正动力学
社会学习（SL）、反事实思维（CT）及其 χ 混合的生灭转移概率、突变修正与选择梯度
"""
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from scipy.special import expit

from schemas.population import PopulationConfig
from schemas.results import (
    FitnessTable, FixedPoint, GradientProfile, Stability, TransitionKernel,
)
from utils.errors import DomainError
from utils.logger import get_logger, log_execution_time
from .fitness import build_fitness_table

logger = get_logger()


class Direction(str, Enum):
    """合作者数变化方向"""
    UP = "up"
    DOWN = "down"


def fermi(beta: float, delta_f: float) -> float:
    """
    Fermi 更新概率 [1 + exp(-β·Δf)]⁻¹

    expit 对任意 |β·Δf| 都不会溢出且单调。
    """
    if beta < 0:
        raise DomainError(f"选择强度 β={beta} 必须非负")
    return float(expit(beta * delta_f))


def _check_state(k: int, cfg: PopulationConfig) -> None:
    if not 0 <= k <= cfg.population_size:
        raise DomainError(f"状态 k={k} 超出 [0, Z={cfg.population_size}]")


def _pairing_prefactor(k: int, cfg: PopulationConfig) -> float:
    """SL 中焦点个体遇到异类榜样的概率"""
    Z = cfg.population_size
    if cfg.exact_pairing:
        return k * (Z - k) / (Z * (Z - 1))
    return (k / Z) * ((Z - k) / Z)


def sl_transitions(k: int, table: FitnessTable, cfg: PopulationConfig) -> Tuple[float, float]:
    """
    社会学习下的 (T⁺, T⁻)

    T±(k) = (k/Z)·((Z-k)/Z)·[1 + exp(∓β_SL·(f_C(k) - f_D(k)))]⁻¹
    """
    _check_state(k, cfg)
    if k == 0 or k == cfg.population_size:
        return 0.0, 0.0
    delta = table.cooperator(k) - table.defector(k)
    prefactor = _pairing_prefactor(k, cfg)
    return prefactor * fermi(cfg.beta_sl, delta), prefactor * fermi(cfg.beta_sl, -delta)


def ct_transitions(k: int, table: FitnessTable, cfg: PopulationConfig) -> Tuple[float, float]:
    """
    反事实思维下的 (T⁺, T⁻)

    背叛者比较自己若改为合作（种群变为 k+1）的收益；合作者比较改为背叛（k-1）的收益。
    """
    _check_state(k, cfg)
    Z = cfg.population_size
    t_plus = 0.0
    t_minus = 0.0
    if k < Z:
        t_plus = (Z - k) / Z * fermi(cfg.beta_ct, table.cooperator(k + 1) - table.defector(k))
    if k > 0:
        t_minus = k / Z * fermi(cfg.beta_ct, table.defector(k - 1) - table.cooperator(k))
    return t_plus, t_minus


def with_mutation(t: float, k: int, direction: Direction, cfg: PopulationConfig) -> float:
    """
    加入突变：以概率 μ 个体直接改为相反策略

    up: (1-μ)·t + μ·(Z-k)/Z；down: (1-μ)·t + μ·k/Z
    """
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"转移概率 t={t} 超出 [0, 1]")
    _check_state(k, cfg)
    Z = cfg.population_size
    mu = cfg.mutation
    if Direction(direction) == Direction.UP:
        return (1.0 - mu) * t + mu * (Z - k) / Z
    return (1.0 - mu) * t + mu * k / Z


@log_execution_time(logger)
def build_kernel(cfg: PopulationConfig, table: Optional[FitnessTable] = None) -> TransitionKernel:
    """
    构建全状态空间的转移核

    MIXED 模式按 χ·T_SL + (1-χ)·T_CT 混合后再加入突变；权重为 0 的分量不参与计算。
    """
    if table is None:
        table = build_fitness_table(cfg)
    Z = cfg.population_size
    if table.population_size != Z:
        raise DomainError(f"适应度表 Z={table.population_size} 与配置 Z={Z} 不一致")

    chi = cfg.effective_chi
    t_plus = np.zeros(Z + 1)
    t_minus = np.zeros(Z + 1)
    for k in range(Z + 1):
        up = 0.0
        down = 0.0
        if chi > 0.0:
            sl_up, sl_down = sl_transitions(k, table, cfg)
            up += chi * sl_up
            down += chi * sl_down
        if chi < 1.0:
            ct_up, ct_down = ct_transitions(k, table, cfg)
            up += (1.0 - chi) * ct_up
            down += (1.0 - chi) * ct_down
        t_plus[k] = with_mutation(up, k, Direction.UP, cfg)
        t_minus[k] = with_mutation(down, k, Direction.DOWN, cfg)

    kernel = TransitionKernel(t_plus=t_plus, t_minus=t_minus,
                              mode=cfg.update_mode, mutation=cfg.mutation)
    kernel.check_invariants()
    return kernel


def gradient(kernel: TransitionKernel) -> GradientProfile:
    """选择梯度 G(k) = T⁺(k) - T⁻(k)"""
    return GradientProfile(g=kernel.t_plus - kernel.t_minus, mode=kernel.mode)


def classify_fixed_points(profile: GradientProfile,
                          include_boundary: bool = False) -> List[FixedPoint]:
    """
    由梯度符号变化定位不动点

    + → - 为稳定点，- → + 为不稳定点；位置取相邻整数状态间的线性插值零点。
    内部状态恰为 0 时按两侧符号分类。默认不报告落在边界格 [0,1] 与 [Z-1,Z]
    内的穿越（突变把单态吸引子推离边界的结果）。
    """
    g = profile.g
    Z = profile.population_size
    points: List[FixedPoint] = []

    def kind_of(left: float, right: float) -> Optional[Stability]:
        if left > 0 and right < 0:
            return Stability.STABLE
        if left < 0 and right > 0:
            return Stability.UNSTABLE
        return None

    for k in range(Z):
        left, right = float(g[k]), float(g[k + 1])

        # 内部状态上的精确零点
        if 0 < k and left == 0.0:
            kind = kind_of(float(g[k - 1]), right)
            on_boundary = k == 1 or k == Z - 1
            if kind is not None and (include_boundary or not on_boundary):
                points.append(FixedPoint(location=float(k), kind=kind))
            continue

        if left == 0.0 or right == 0.0:
            continue
        kind = kind_of(left, right)
        if kind is None:
            continue
        boundary_cell = k == 0 or k + 1 == Z
        if boundary_cell and not include_boundary:
            continue
        location = k + left / (left - right)
        points.append(FixedPoint(location=location, kind=kind))

    return points

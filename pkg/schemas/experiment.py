"""
命令行实验请求模型
"""
from enum import Enum
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .population import PopulationConfig


class Command(str, Enum):
    """实验命令"""
    GRADIENT = "gradient"
    STATIONARY = "stationary"
    COOP_INDEX = "coop-index"
    FIXED_POINTS = "fixed-points"
    SWEEP_CHI = "sweep-chi"
    SWEEP = "sweep"
    SIMULATE = "simulate"
    HISTORY = "history"

    def needs_stationary(self) -> bool:
        """是否需要不可约链（μ > 0）"""
        return self in (Command.STATIONARY, Command.COOP_INDEX, Command.SWEEP_CHI, Command.SWEEP)

    def is_sweep(self) -> bool:
        return self in (Command.SWEEP_CHI, Command.SWEEP)


class SweepParameter(str, Enum):
    """可扫描的标量参数"""
    CHI = "chi"
    MU = "mu"
    BETA_SL = "beta_sl"
    BETA_CT = "beta_ct"
    F = "f"

    @property
    def config_field(self) -> str:
        """对应 PopulationConfig.replace 的字段名"""
        return {
            SweepParameter.CHI: 'chi',
            SweepParameter.MU: 'mutation',
            SweepParameter.BETA_SL: 'beta_sl',
            SweepParameter.BETA_CT: 'beta_ct',
            SweepParameter.F: 'enhancement',
        }[self]


class StationarySolver(str, Enum):
    """平稳分布求解方式"""
    PRODUCT = "product"  # 生灭链细致平衡乘积公式
    EIGEN = "eigen"  # 稠密特征向量，仅用于交叉核对


class SweepSpec(BaseModel):
    """线性扫描区间 [start, stop]，共 points 个点"""
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    parameter: SweepParameter = Field(default=SweepParameter.CHI, description="扫描参数")
    start: float = Field(default=0.0, description="起点")
    stop: float = Field(default=1.0, description="终点")
    points: int = Field(default=21, ge=1, description="点数")

    @model_validator(mode='after')
    def validate_range(self) -> 'SweepSpec':
        """区间非空、单调且位于参数定义域内"""
        name = self.parameter.value
        if self.start > self.stop:
            raise ValueError(f"扫描区间必须单调：要求 start ≤ stop，收到 {self.start} > {self.stop}")
        if self.points == 1 and self.start != self.stop:
            raise ValueError("points = 1 时要求 start = stop")
        if self.points > 1 and self.start == self.stop:
            raise ValueError("points > 1 时要求 start < stop")

        if self.parameter == SweepParameter.CHI and not (0.0 <= self.start and self.stop <= 1.0):
            raise ValueError(f"{name} 扫描区间必须位于 [0, 1]")
        if self.parameter == SweepParameter.MU and not (0.0 < self.start and self.stop <= 1.0):
            raise ValueError(f"{name} 扫描区间必须位于 (0, 1]（μ = 0 时链可约）")
        if self.parameter in (SweepParameter.BETA_SL, SweepParameter.BETA_CT) and self.start < 0.0:
            raise ValueError(f"{name} 扫描区间要求 β ≥ 0")
        if self.parameter == SweepParameter.F and self.start <= 0.0:
            raise ValueError(f"{name} 扫描区间要求 F > 0")
        return self


class ExperimentRequest(BaseModel):
    """一次命令行实验"""
    model_config = ConfigDict(frozen=True)

    command: Command = Field(..., description="实验命令")
    cfg: PopulationConfig = Field(..., description="种群参数")
    sweep: Optional[SweepSpec] = Field(default=None, description="扫描区间")
    solver: StationarySolver = Field(default=StationarySolver.PRODUCT, description="平稳分布求解方式")
    out: Optional[Path] = Field(default=None, description="输出文件，None 表示标准输出")

    # 模拟参数
    seed: int = Field(default=0, ge=0, description="随机种子")
    steps: int = Field(default=1_000_000, ge=1, description="模拟步数")
    burn_in: Optional[int] = Field(default=None, ge=0, description="预热步数，None 表示 10·Z")
    initial_k: Optional[int] = Field(default=None, ge=0, description="初始合作者数，None 表示 Z/2")
    replicates: int = Field(default=1, ge=1, description="独立重复次数")

    # 运行环境
    workers: Optional[int] = Field(default=None, ge=1, description="并行数，None 表示使用引擎配置")
    config_path: Optional[Path] = Field(default=None, description="引擎配置文件")
    history_db: Optional[str] = Field(default=None, description="运行历史数据库")
    log_level: Optional[str] = Field(default=None, description="日志级别")
    history_limit: int = Field(default=20, ge=1, description="history 命令显示条数")

    @model_validator(mode='after')
    def validate_request(self) -> 'ExperimentRequest':
        if self.command.needs_stationary() and self.cfg.mutation == 0.0:
            raise ValueError(
                "μ = 0 时马尔可夫链可约（全 C / 全 D 为吸收态），平稳分布不唯一；"
                "请设置 μ > 0，或改用吸收态分析"
            )
        if self.command.is_sweep() and self.sweep is None:
            raise ValueError(f"{self.command.value} 需要扫描区间")
        if self.command == Command.SWEEP_CHI and self.sweep.parameter != SweepParameter.CHI:
            raise ValueError("sweep-chi 只能扫描 χ")
        if self.initial_k is not None and self.initial_k > self.cfg.population_size:
            raise ValueError(f"初始合作者数 {self.initial_k} 超出 [0, Z={self.cfg.population_size}]")
        if self.burn_in is not None and self.steps <= self.burn_in:
            raise ValueError(f"要求 steps > burn_in，收到 steps={self.steps}, burn_in={self.burn_in}")
        return self

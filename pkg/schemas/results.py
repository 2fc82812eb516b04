"""
计算结果数据模型
适应度表、转移核、梯度、平稳分布、模拟报告
"""
from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from utils.errors import DomainError, KernelError
from .population import UpdateMode

# 概率约束的浮点容差
PROBABILITY_TOLERANCE = 1e-12


def _frozen_array(value) -> np.ndarray:
    """复制为只读 float 数组，可在线程间共享"""
    array = np.array(value, dtype=float)
    array.setflags(write=False)
    return array


class _ArrayModel(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class FitnessTable(_ArrayModel):
    """
    各状态 k 下合作者与背叛者的平均适应度

    f_c[i] 对应 k = i + 1（k = 1..Z），f_d[i] 对应 k = i（k = 0..Z-1）。
    """
    population_size: int = Field(..., ge=2, description="种群规模 Z")
    f_c: np.ndarray = Field(..., description="合作者适应度 f_C(k), k=1..Z")
    f_d: np.ndarray = Field(..., description="背叛者适应度 f_D(k), k=0..Z-1")

    @field_validator('f_c', 'f_d', mode='before')
    @classmethod
    def to_array(cls, v):
        return _frozen_array(v)

    @model_validator(mode='after')
    def validate_shape(self) -> 'FitnessTable':
        """长度为 Z 且全部有限"""
        z = self.population_size
        if self.f_c.shape != (z,) or self.f_d.shape != (z,):
            raise ValueError(f"适应度表长度必须为 Z={z}")
        if not (np.all(np.isfinite(self.f_c)) and np.all(np.isfinite(self.f_d))):
            raise ValueError("适应度表包含非有限值")
        return self

    def cooperator(self, k: int) -> float:
        """f_C(k)，仅当 1 ≤ k ≤ Z"""
        if not 1 <= k <= self.population_size:
            raise DomainError(f"f_C(k) 仅在 1 ≤ k ≤ Z 定义，收到 k={k}")
        return float(self.f_c[k - 1])

    def defector(self, k: int) -> float:
        """f_D(k)，仅当 0 ≤ k ≤ Z-1"""
        if not 0 <= k <= self.population_size - 1:
            raise DomainError(f"f_D(k) 仅在 0 ≤ k ≤ Z-1 定义，收到 k={k}")
        return float(self.f_d[k])


class TransitionKernel(_ArrayModel):
    """生灭过程转移概率 T⁺(k)、T⁻(k)，k = 0..Z"""
    t_plus: np.ndarray = Field(..., description="T⁺(k)")
    t_minus: np.ndarray = Field(..., description="T⁻(k)")
    mode: UpdateMode = Field(..., description="策略修正方式")
    mutation: float = Field(default=0.0, ge=0.0, le=1.0, description="突变概率 μ")

    @field_validator('t_plus', 't_minus', mode='before')
    @classmethod
    def to_array(cls, v):
        return _frozen_array(v)

    @model_validator(mode='after')
    def validate_shape(self) -> 'TransitionKernel':
        if self.t_plus.ndim != 1 or self.t_plus.shape != self.t_minus.shape or self.t_plus.size < 3:
            raise ValueError("T⁺ 与 T⁻ 必须为等长一维数组，长度 Z+1 ≥ 3")
        return self

    @property
    def population_size(self) -> int:
        return self.t_plus.size - 1

    @property
    def includes_mutation(self) -> bool:
        return self.mutation > 0.0

    def check_invariants(self) -> None:
        """
        校验转移核约束，违反时抛出 KernelError

        - 0 ≤ T± ≤ 1，T⁺ + T⁻ ≤ 1
        - T⁺(Z) = 0，T⁻(0) = 0
        - μ > 0 时内部转移严格为正（不可约）
        """
        tol = PROBABILITY_TOLERANCE
        up, down = self.t_plus, self.t_minus
        if not (np.all(np.isfinite(up)) and np.all(np.isfinite(down))):
            raise KernelError("转移概率包含非有限值")
        if np.any(up < -tol) or np.any(up > 1 + tol) or np.any(down < -tol) or np.any(down > 1 + tol):
            raise KernelError("转移概率超出 [0, 1]")
        if np.any(up + down > 1 + tol):
            k = int(np.argmax(up + down))
            raise KernelError(f"状态 k={k} 处 T⁺ + T⁻ > 1")
        if up[-1] != 0.0 or down[0] != 0.0:
            raise KernelError("边界条件被破坏：要求 T⁺(Z) = 0 且 T⁻(0) = 0")
        if self.includes_mutation and (np.any(up[:-1] <= 0.0) or np.any(down[1:] <= 0.0)):
            raise KernelError("μ > 0 时内部转移概率必须严格为正")


class GradientProfile(_ArrayModel):
    """选择梯度 G(k) = T⁺(k) - T⁻(k)"""
    g: np.ndarray = Field(..., description="G(k), k=0..Z")
    mode: UpdateMode = Field(..., description="策略修正方式")

    @field_validator('g', mode='before')
    @classmethod
    def to_array(cls, v):
        return _frozen_array(v)

    @property
    def population_size(self) -> int:
        return self.g.size - 1


class Stability(str, Enum):
    """不动点稳定性"""
    STABLE = "stable"
    UNSTABLE = "unstable"


class FixedPoint(BaseModel):
    """有限种群下的不动点（在整数状态间线性插值）"""
    model_config = ConfigDict(frozen=True)

    location: float = Field(..., description="插值后的合作者数")
    kind: Stability = Field(..., description="稳定 / 不稳定")


class StationaryDistribution(_ArrayModel):
    """平稳分布 s_k，k = 0..Z"""
    s: np.ndarray = Field(..., description="s_k")

    @field_validator('s', mode='before')
    @classmethod
    def to_array(cls, v):
        return _frozen_array(v)

    @model_validator(mode='after')
    def validate_probabilities(self) -> 'StationaryDistribution':
        if self.s.ndim != 1 or self.s.size < 2:
            raise ValueError("平稳分布必须为一维数组")
        if np.any(self.s < 0.0) or not np.all(np.isfinite(self.s)):
            raise ValueError("平稳分布包含负值或非有限值")
        if abs(float(self.s.sum()) - 1.0) > PROBABILITY_TOLERANCE:
            raise ValueError("平稳分布未归一化")
        return self

    @property
    def population_size(self) -> int:
        return self.s.size - 1


class CooperationSummary(BaseModel):
    """合作指数 ⟨C⟩ 及其归一化值"""
    model_config = ConfigDict(frozen=True)

    expected_cooperators: float = Field(..., ge=0.0, description="⟨C⟩ = Σ k·s_k")
    cooperation_index_normalized: float = Field(..., ge=0.0, description="⟨C⟩ / Z")


class SimulationReport(_ArrayModel):
    """蒙特卡洛模拟报告"""
    empirical_distribution: np.ndarray = Field(..., description="预热后各状态访问频率")
    steps: int = Field(..., ge=1, description="总步数")
    burn_in: int = Field(..., ge=0, description="预热步数")
    seed: int = Field(..., ge=0, description="随机种子")
    final_state: int = Field(..., ge=0, description="最终合作者数")

    @field_validator('empirical_distribution', mode='before')
    @classmethod
    def to_array(cls, v):
        return _frozen_array(v)

    @model_validator(mode='after')
    def validate_report(self) -> 'SimulationReport':
        freq = self.empirical_distribution
        if np.any(freq < 0.0) or abs(float(freq.sum()) - 1.0) > PROBABILITY_TOLERANCE:
            raise ValueError("访问频率必须非负且和为 1")
        if self.steps <= self.burn_in:
            raise ValueError("要求 steps > burn_in")
        if self.final_state >= freq.size:
            raise ValueError("最终状态超出状态空间")
        return self

    @property
    def recorded_steps(self) -> int:
        return self.steps - self.burn_in



"""
种群层面参数模型
"""
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .game import GameSpec


class UpdateMode(str, Enum):
    """策略修正方式"""
    SL = "sl"  # 社会学习
    CT = "ct"  # 反事实思维
    MIXED = "mixed"  # 以概率 χ 使用 SL，否则 CT


class PopulationConfig(BaseModel):
    """有限种群动力学参数"""
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    population_size: int = Field(..., ge=2, description="种群规模 Z")
    game: GameSpec = Field(..., description="群体博弈")
    mutation: float = Field(default=0.01, ge=0.0, le=1.0, description="突变概率 μ")
    beta_sl: float = Field(default=5.0, ge=0.0, description="社会学习选择强度 β_SL")
    beta_ct: float = Field(default=5.0, ge=0.0, description="反事实思维选择强度 β_CT")
    chi: float = Field(default=1.0, ge=0.0, le=1.0, description="使用 SL 的概率 χ")
    update_mode: UpdateMode = Field(default=UpdateMode.SL, description="策略修正方式")
    exact_pairing: bool = Field(default=False, description="SL 榜样从其余 Z-1 人中抽取")

    @model_validator(mode='after')
    def validate_population(self) -> 'PopulationConfig':
        """种群必须能容纳一个完整群体"""
        if self.population_size < self.game.group_size:
            raise ValueError(
                f"种群规模 Z={self.population_size} 小于群体规模 N={self.game.group_size}（要求 Z ≥ N）"
            )
        return self

    @property
    def Z(self) -> int:
        return self.population_size

    @property
    def effective_chi(self) -> float:
        """实际使用 SL 的概率：SL 为 1，CT 为 0，MIXED 为 χ"""
        if self.update_mode == UpdateMode.SL:
            return 1.0
        if self.update_mode == UpdateMode.CT:
            return 0.0
        return self.chi

    def replace(self, **changes) -> 'PopulationConfig':
        """
        返回修改后的新配置（重新校验）

        博弈字段（group_size / threshold / enhancement / cost）自动写入 game。
        """
        data = self.model_dump()
        for key, value in changes.items():
            if key in GameSpec.model_fields:
                data['game'][key] = value
            elif key in PopulationConfig.model_fields:
                data[key] = value
            else:
                raise ValueError(f"未知参数: {key}")
        return PopulationConfig.model_validate(data)

    @classmethod
    def from_preset(cls, preset: dict, **overrides) -> 'PopulationConfig':
        """从平铺的参数字典（如 Presets.STAG_HUNT）构建"""
        flat = {**preset, **overrides}
        game = {key: flat.pop(key) for key in list(flat) if key in GameSpec.model_fields}
        return cls.model_validate({**flat, 'game': game})

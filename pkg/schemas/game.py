"""
N 人阈值公共品博弈参数模型
"""
from pydantic import BaseModel, ConfigDict, Field, model_validator


class GameSpec(BaseModel):
    """
    N 人猎鹿博弈（M = 1 时退化为 N 人囚徒困境）

    群体内至少 M 名合作者时，公共池 j·c 乘以 F 后由 N 人平分。
    """
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    group_size: int = Field(..., ge=2, description="群体规模 N")
    threshold: int = Field(..., ge=1, description="协调阈值 M")
    enhancement: float = Field(..., gt=0, description="增益因子 F")
    cost: float = Field(default=1.0, gt=0, description="合作成本 c")

    @model_validator(mode='after')
    def validate_threshold(self) -> 'GameSpec':
        """阈值不能超过群体规模"""
        if self.threshold > self.group_size:
            raise ValueError(
                f"协调阈值 M={self.threshold} 超过群体规模 N={self.group_size}（要求 1 ≤ M ≤ N）"
            )
        return self

    @property
    def N(self) -> int:
        return self.group_size

    @property
    def M(self) -> int:
        return self.threshold

    @property
    def F(self) -> float:
        return self.enhancement

    @property
    def c(self) -> float:
        return self.cost

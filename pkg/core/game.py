"""
N 人猎鹿博弈收益函数

P_D(j) = H(j - M) · j·F·c / N
P_C(j) = P_D(j) - c
其中 H(x) = 1 当 x ≥ 0，否则为 0。
"""
import numpy as np

from schemas.game import GameSpec
from utils.errors import DomainError


def heaviside(x: float) -> float:
    """阶跃函数，H(0) = 1"""
    return 1.0 if x >= 0 else 0.0


def payoff_defector(j: int, game: GameSpec) -> float:
    """
    背叛者收益

    Args:
        j: 群体内合作者数（0 ≤ j ≤ N）
        game: 博弈参数

    Returns:
        收益
    """
    if not 0 <= j <= game.N:
        raise DomainError(f"合作者数 j={j} 超出 [0, N={game.N}]")
    return heaviside(j - game.M) * j * game.F * game.c / game.N


def payoff_cooperator(j: int, game: GameSpec) -> float:
    """
    合作者收益

    Args:
        j: 群体内合作者数，包含焦点合作者本人（1 ≤ j ≤ N）
        game: 博弈参数
    """
    if not 1 <= j <= game.N:
        raise DomainError(f"合作者所在群体至少有 1 名合作者，j={j} 超出 [1, N={game.N}]")
    return payoff_defector(j, game) - game.c


def defector_payoffs(game: GameSpec) -> np.ndarray:
    """P_D(j)，j = 0..N-1（焦点背叛者的 N-1 名同伴中有 j 名合作者）"""
    return np.array([payoff_defector(j, game) for j in range(game.N)])


def cooperator_payoffs(game: GameSpec) -> np.ndarray:
    """P_C(j+1)，j = 0..N-1（焦点合作者的 N-1 名同伴中有 j 名合作者）"""
    return np.array([payoff_cooperator(j + 1, game) for j in range(game.N)])

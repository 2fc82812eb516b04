"""
平均适应度计算
焦点个体的 N-1 名同伴从其余 Z-1 人中无放回抽取（超几何分布）
"""
import numpy as np
from scipy.special import gammaln

from schemas.population import PopulationConfig
from schemas.results import FitnessTable
from utils.errors import DomainError
from utils.logger import get_logger, log_execution_time
from .game import cooperator_payoffs, defector_payoffs

logger = get_logger()


def log_comb(n, r) -> np.ndarray:
    """
    ln C(n, r)，在 r < 0、r > n 或 n < 0 时返回 -inf（即 C = 0）

    支持 numpy 广播。
    """
    n = np.asarray(n, dtype=float)
    r = np.asarray(r, dtype=float)
    valid = (n >= 0) & (r >= 0) & (r <= n)
    n_safe = np.where(valid, n, 0.0)
    r_safe = np.where(valid, r, 0.0)
    value = gammaln(n_safe + 1) - gammaln(r_safe + 1) - gammaln(n_safe - r_safe + 1)
    return np.where(valid, value, -np.inf)


def _check_focal_state(Z: int, k: int, focal_is_cooperator: bool) -> None:
    if focal_is_cooperator and not 1 <= k <= Z:
        raise DomainError(f"焦点为合作者时要求 1 ≤ k ≤ Z，收到 k={k}")
    if not focal_is_cooperator and not 0 <= k <= Z - 1:
        raise DomainError(f"焦点为背叛者时要求 0 ≤ k ≤ Z-1，收到 k={k}")


def _log_weights(Z: int, k, N: int, j, focal_is_cooperator: bool) -> np.ndarray:
    # 焦点之外的 Z-1 人中：合作者 k-1 或 k 人，背叛者 Z-k 或 Z-k-1 人
    k = np.asarray(k)
    cooperators = k - 1 if focal_is_cooperator else k
    defectors = Z - k if focal_is_cooperator else Z - k - 1
    return (log_comb(cooperators, j)
            + log_comb(defectors, N - 1 - j)
            - log_comb(Z - 1, N - 1))


def hypergeometric_weight(Z: int, k: int, N: int, j: int, focal_is_cooperator: bool) -> float:
    """
    焦点个体的 N-1 名同伴中恰有 j 名合作者的概率

    Args:
        Z: 种群规模
        k: 种群中合作者数
        N: 群体规模
        j: 同伴中的合作者数（0 ≤ j ≤ N-1）
        focal_is_cooperator: 焦点个体是否为合作者

    Returns:
        [0, 1] 内的概率
    """
    if N < 2 or Z < N:
        raise DomainError(f"要求 2 ≤ N ≤ Z，收到 N={N}, Z={Z}")
    if not 0 <= j <= N - 1:
        raise DomainError(f"同伴合作者数 j={j} 超出 [0, N-1={N - 1}]")
    _check_focal_state(Z, k, focal_is_cooperator)
    return float(np.exp(_log_weights(Z, k, N, j, focal_is_cooperator)))


def hypergeometric_weights(Z: int, k: int, N: int, focal_is_cooperator: bool) -> np.ndarray:
    """j = 0..N-1 上的全部权重"""
    _check_focal_state(Z, k, focal_is_cooperator)
    return np.exp(_log_weights(Z, k, N, np.arange(N), focal_is_cooperator))


def _weight_matrix(Z: int, states: np.ndarray, N: int, focal_is_cooperator: bool) -> np.ndarray:
    """形状 (len(states), N) 的权重矩阵"""
    return np.exp(_log_weights(Z, states[:, None], N, np.arange(N)[None, :], focal_is_cooperator))


def fitness_defector(k: int, cfg: PopulationConfig) -> float:
    """f_D(k) = Σ_j w_D(j) · P_D(j)，0 ≤ k ≤ Z-1"""
    Z = cfg.population_size
    if not 0 <= k <= Z - 1:
        raise DomainError(f"k={k} 时种群中没有背叛者，f_D 无定义（要求 0 ≤ k ≤ Z-1）")
    weights = _weight_matrix(Z, np.array([k]), cfg.game.N, focal_is_cooperator=False)
    return float(np.sum(weights * defector_payoffs(cfg.game), axis=-1)[0])


def fitness_cooperator(k: int, cfg: PopulationConfig) -> float:
    """f_C(k) = Σ_j w_C(j) · P_C(j+1)，1 ≤ k ≤ Z"""
    Z = cfg.population_size
    if not 1 <= k <= Z:
        raise DomainError(f"k={k} 时种群中没有合作者，f_C 无定义（要求 1 ≤ k ≤ Z）")
    weights = _weight_matrix(Z, np.array([k]), cfg.game.N, focal_is_cooperator=True)
    return float(np.sum(weights * cooperator_payoffs(cfg.game), axis=-1)[0])


@log_execution_time(logger)
def build_fitness_table(cfg: PopulationConfig) -> FitnessTable:
    """
    预计算所有状态下的适应度

    Returns:
        f_C(k), k=1..Z 与 f_D(k), k=0..Z-1
    """
    Z, N = cfg.population_size, cfg.game.N
    c_weights = _weight_matrix(Z, np.arange(1, Z + 1), N, focal_is_cooperator=True)
    d_weights = _weight_matrix(Z, np.arange(0, Z), N, focal_is_cooperator=False)
    f_c = np.sum(c_weights * cooperator_payoffs(cfg.game), axis=-1)
    f_d = np.sum(d_weights * defector_payoffs(cfg.game), axis=-1)
    logger.debug(f"Fitness table built: Z={Z}, N={N}, M={cfg.game.M}, F={cfg.game.F}")
    return FitnessTable(population_size=Z, f_c=f_c, f_d=f_d)

"""
生灭马尔可夫链
转移矩阵、平稳分布与合作指数
"""
import numpy as np
from scipy import linalg, sparse
from scipy.special import logsumexp

from schemas.results import CooperationSummary, StationaryDistribution, TransitionKernel
from utils.errors import ReducibleChainError
from utils.logger import get_logger, log_execution_time

logger = get_logger()


def transition_matrix(kernel: TransitionKernel) -> sparse.csr_matrix:
    """
    三对角随机矩阵 Λ，大小 (Z+1)×(Z+1)

    Λ[k, k+1] = T⁺(k)，Λ[k, k-1] = T⁻(k)，Λ[k, k] = 1 - T⁺(k) - T⁻(k)
    """
    kernel.check_invariants()
    diagonal = 1.0 - kernel.t_plus - kernel.t_minus
    return sparse.diags(
        [kernel.t_minus[1:], diagonal, kernel.t_plus[:-1]],
        offsets=[-1, 0, 1],
        format='csr',
    )


def _require_irreducible(kernel: TransitionKernel) -> None:
    if not kernel.includes_mutation:
        raise ReducibleChainError(
            "μ = 0 时全 C 与全 D 为吸收态，链可约且平稳分布不唯一；请设置 μ > 0 或改用吸收态分析"
        )
    kernel.check_invariants()


@log_execution_time(logger)
def stationary_distribution(kernel: TransitionKernel) -> StationaryDistribution:
    """
    细致平衡乘积公式：s_k ∝ Π_{i<k} T⁺(i) / T⁻(i+1)

    在对数空间累加，Z 达到 10⁴、β 达到 50 时也不会上溢或下溢。
    """
    _require_irreducible(kernel)
    log_ratio = np.log(kernel.t_plus[:-1]) - np.log(kernel.t_minus[1:])
    log_s = np.concatenate(([0.0], np.cumsum(log_ratio)))
    s = np.exp(log_s - logsumexp(log_s))
    return StationaryDistribution(s=s / s.sum())


def stationary_distribution_eigen(kernel: TransitionKernel) -> StationaryDistribution:
    """
    Λᵀ 对应特征值 1 的特征向量（稠密求解）

    解 (Λᵀ - I)s = 0，最后一行换成归一化条件 Σs = 1，再做一次迭代修正。
    仅用于交叉核对，O(Z³)；强亚稳的链条件数大，与乘积公式只在 1e-8 量级内一致。
    """
    _require_irreducible(kernel)
    size = kernel.population_size + 1
    system = transition_matrix(kernel).toarray().T - np.eye(size)
    system[-1, :] = 1.0
    rhs = np.zeros(size)
    rhs[-1] = 1.0

    factors = linalg.lu_factor(system)
    vector = linalg.lu_solve(factors, rhs)
    vector += linalg.lu_solve(factors, rhs - system @ vector)
    # 数值噪声可能产生 -1e-17 量级的负值
    vector = np.clip(vector, 0.0, None)
    return StationaryDistribution(s=vector / vector.sum())


def cooperation_index(distribution: StationaryDistribution) -> CooperationSummary:
    """合作指数 ⟨C⟩ = Σ k·s_k，并给出 ⟨C⟩/Z"""
    Z = distribution.population_size
    expected = float(np.dot(np.arange(Z + 1), distribution.s))
    return CooperationSummary(
        expected_cooperators=expected,
        cooperation_index_normalized=expected / Z,
    )

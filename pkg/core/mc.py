"""
个体层面蒙特卡洛模拟
与解析转移核相同的微观更新规则，作为独立的随机核对手段

每一步只有一名焦点个体修正策略，消耗 5 个 [0,1) 均匀随机数：
焦点选择、突变判定、SL/CT 选择、榜样选择、接受判定。
随机数来自 numpy.random.default_rng(seed)（PCG64）。
"""
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np

from schemas.population import PopulationConfig
from schemas.results import FitnessTable, SimulationReport
from utils.errors import DomainError
from utils.logger import get_logger
from .dynamics import fermi
from .fitness import build_fitness_table

logger = get_logger()

UNIFORMS_PER_STEP = 5
DEFAULT_BURN_IN_FACTOR = 10
DEFAULT_CHUNK_STEPS = 65536


def default_burn_in(cfg: PopulationConfig, factor: int = DEFAULT_BURN_IN_FACTOR) -> int:
    """默认预热步数 factor·Z"""
    return factor * cfg.population_size


class PopulationSimulator:
    """
    单条轨迹模拟器

    只记录合作者数 k；同类个体可互换，因此无需跟踪个体身份。
    """

    def __init__(self, cfg: PopulationConfig, table: Optional[FitnessTable] = None):
        self.cfg = cfg
        self.table = table if table is not None else build_fitness_table(cfg)
        self._z = cfg.population_size
        self._mu = cfg.mutation
        self._chi = cfg.effective_chi
        self._pool = self._z - 1 if cfg.exact_pairing else self._z
        self._build_acceptance()

    def _build_acceptance(self) -> None:
        """预计算各状态下的 Fermi 接受概率"""
        Z = self._z
        table = self.table
        imitate_up = [0.0] * (Z + 1)
        imitate_down = [0.0] * (Z + 1)
        reflect_up = [0.0] * (Z + 1)
        reflect_down = [0.0] * (Z + 1)
        for k in range(Z + 1):
            if 0 < k < Z:
                delta = table.cooperator(k) - table.defector(k)
                imitate_up[k] = fermi(self.cfg.beta_sl, delta)
                imitate_down[k] = fermi(self.cfg.beta_sl, -delta)
            if k < Z:
                reflect_up[k] = fermi(self.cfg.beta_ct, table.cooperator(k + 1) - table.defector(k))
            if k > 0:
                reflect_down[k] = fermi(self.cfg.beta_ct, table.defector(k - 1) - table.cooperator(k))
        self._imitate_up = imitate_up
        self._imitate_down = imitate_down
        self._reflect_up = reflect_up
        self._reflect_down = reflect_down

    def advance(self, k: int, u_focal: float, u_mutation: float, u_rule: float,
                u_model: float, u_accept: float) -> int:
        """用给定的 5 个均匀随机数执行一次策略修正，返回新状态"""
        Z = self._z
        focal_is_cooperator = int(u_focal * Z) < k  # 个体 0..k-1 为合作者

        if u_mutation < self._mu:
            return k - 1 if focal_is_cooperator else k + 1

        if u_rule < self._chi:
            # 社会学习：榜样默认从全体 Z 人中抽取（可能抽到自己，等同不变）
            model = int(u_model * self._pool)
            if focal_is_cooperator:
                # exact_pairing 时其余 Z-1 人中前 k-1 个为合作者
                cooperators_in_pool = k - 1 if self.cfg.exact_pairing else k
                if model < cooperators_in_pool:
                    return k
                return k - 1 if u_accept < self._imitate_down[k] else k
            if model >= k:
                return k
            return k + 1 if u_accept < self._imitate_up[k] else k

        # 反事实思维：与改变策略后的假想种群比较
        if focal_is_cooperator:
            return k - 1 if u_accept < self._reflect_down[k] else k
        return k + 1 if u_accept < self._reflect_up[k] else k

    def step(self, k: int, rng: np.random.Generator) -> int:
        """从 rng 取 5 个均匀数执行一步"""
        if not 0 <= k <= self._z:
            raise DomainError(f"状态 k={k} 超出 [0, Z={self._z}]")
        return self.advance(k, *rng.random(UNIFORMS_PER_STEP).tolist())

    def run(self, initial_k: int, steps: int, burn_in: int, seed: int,
            chunk_steps: int = DEFAULT_CHUNK_STEPS) -> SimulationReport:
        """
        运行一条轨迹，统计预热后的状态访问频率

        第 t 步（t = 1..steps）之后若 t > burn_in 则记录当前状态。
        """
        Z = self._z
        if not 0 <= initial_k <= Z:
            raise DomainError(f"初始状态 initial_k={initial_k} 超出 [0, Z={Z}]")
        if not steps > burn_in >= 0:
            raise DomainError(f"要求 steps > burn_in ≥ 0，收到 steps={steps}, burn_in={burn_in}")

        rng = np.random.default_rng(seed)
        advance = self.advance
        counts = [0] * (Z + 1)
        k = initial_k
        done = 0
        while done < steps:
            n = min(chunk_steps, steps - done)
            block = rng.random((n, UNIFORMS_PER_STEP)).tolist()
            for row in block:
                k = advance(k, *row)
                done += 1
                if done > burn_in:
                    counts[k] += 1
            logger.log_simulation_progress(seed, done, steps)

        frequencies = np.array(counts, dtype=float) / (steps - burn_in)
        return SimulationReport(
            empirical_distribution=frequencies,
            steps=steps,
            burn_in=burn_in,
            seed=seed,
            final_state=k,
        )

    def one_step_frequencies(self, k: int, trials: int, seed: int) -> Tuple[float, float]:
        """从固定状态 k 出发重复 trials 次单步，返回 (k+1 的频率, k-1 的频率)"""
        if not 0 <= k <= self._z:
            raise DomainError(f"状态 k={k} 超出 [0, Z={self._z}]")
        rng = np.random.default_rng(seed)
        advance = self.advance
        ups = 0
        downs = 0
        done = 0
        while done < trials:
            n = min(DEFAULT_CHUNK_STEPS, trials - done)
            for row in rng.random((n, UNIFORMS_PER_STEP)).tolist():
                moved = advance(k, *row) - k
                if moved > 0:
                    ups += 1
                elif moved < 0:
                    downs += 1
            done += n
        return ups / trials, downs / trials


@lru_cache(maxsize=32)
def _simulator_for(cfg: PopulationConfig) -> PopulationSimulator:
    return PopulationSimulator(cfg)


def step(k: int, cfg: PopulationConfig, rng: np.random.Generator) -> int:
    """单步更新，返回 k' ∈ {k-1, k, k+1}"""
    return _simulator_for(cfg).step(k, rng)


def run(cfg: PopulationConfig, initial_k: int, steps: int,
        burn_in: Optional[int] = None, seed: int = 0,
        chunk_steps: int = DEFAULT_CHUNK_STEPS) -> SimulationReport:
    """运行一条轨迹；burn_in 缺省为 10·Z"""
    if burn_in is None:
        burn_in = default_burn_in(cfg)
    logger.info(f"Simulation Started: mode={cfg.update_mode.value}, steps={steps}, seed={seed}")
    return _simulator_for(cfg).run(initial_k, steps, burn_in, seed, chunk_steps)


def one_step_frequencies(cfg: PopulationConfig, k: int, trials: int, seed: int) -> Tuple[float, float]:
    """固定状态下的单步经验转移频率"""
    return _simulator_for(cfg).one_step_frequencies(k, trials, seed)


def replicate_seeds(seed: int, replicates: int) -> List[int]:
    """由 SeedSequence 派生相互独立的种子；单次重复直接使用原种子"""
    if replicates == 1:
        return [seed]
    children = np.random.SeedSequence(seed).spawn(replicates)
    return [int(child.generate_state(1)[0]) for child in children]


def _run_task(task: tuple) -> SimulationReport:
    cfg, initial_k, steps, burn_in, seed, chunk_steps = task
    return run(cfg, initial_k, steps, burn_in, seed, chunk_steps)


def run_replicates(cfg: PopulationConfig, initial_k: int, steps: int,
                   burn_in: Optional[int] = None, seed: int = 0,
                   replicates: int = 1, workers: int = 1,
                   chunk_steps: int = DEFAULT_CHUNK_STEPS) -> List[SimulationReport]:
    """
    独立重复模拟

    各轨迹之间没有共享状态；workers > 1 时使用进程池，结果按种子顺序返回。
    """
    if burn_in is None:
        burn_in = default_burn_in(cfg)
    tasks = [(cfg, initial_k, steps, burn_in, s, chunk_steps)
             for s in replicate_seeds(seed, replicates)]
    if workers <= 1 or replicates == 1:
        return [_run_task(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=min(workers, replicates)) as executor:
        return list(executor.map(_run_task, tasks))


def pool_reports(reports: Sequence[SimulationReport]) -> SimulationReport:
    """合并多条轨迹：按记录步数加权平均访问频率"""
    if not reports:
        raise DomainError("至少需要一份模拟报告")
    sizes = {r.empirical_distribution.size for r in reports}
    if len(sizes) != 1:
        raise DomainError("模拟报告的状态空间大小不一致")
    if len(reports) == 1:
        return reports[0]

    weights = np.array([r.recorded_steps for r in reports], dtype=float)
    stacked = np.stack([r.empirical_distribution for r in reports])
    pooled = weights @ stacked / weights.sum()
    return SimulationReport(
        empirical_distribution=pooled / pooled.sum(),
        steps=sum(r.steps for r in reports),
        burn_in=sum(r.burn_in for r in reports),
        seed=reports[0].seed,
        final_state=reports[-1].final_state,
    )

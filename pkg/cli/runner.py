"""
实验执行
把 ExperimentRequest 分派到引擎并生成 CSV 文本
"""
from typing import List, Optional, Sequence, Tuple

from config.engine_config import EngineConfig
from core.dynamics import build_kernel, classify_fixed_points, gradient
from core.fitness import build_fitness_table
from core.markov import cooperation_index, stationary_distribution, stationary_distribution_eigen
from core.mc import pool_reports, run_replicates
from core.sweep import linear_grid, sweep_chi, sweep_parameter
from database.manager import HistoryManager
from schemas.experiment import Command, ExperimentRequest, StationarySolver
from utils.errors import UsageError
from utils.logger import get_logger
from .output import metadata_line, to_csv

logger = get_logger()

Table = Tuple[Sequence[str], List[Sequence]]


def _kernel(request: ExperimentRequest):
    cfg = request.cfg
    return build_kernel(cfg, build_fitness_table(cfg))


def _stationary(request: ExperimentRequest):
    kernel = _kernel(request)
    if request.solver == StationarySolver.EIGEN:
        return stationary_distribution_eigen(kernel)
    return stationary_distribution(kernel)


def _gradient_table(request: ExperimentRequest) -> Table:
    kernel = _kernel(request)
    profile = gradient(kernel)
    Z = request.cfg.population_size
    rows = [
        (k, k / Z, float(kernel.t_plus[k]), float(kernel.t_minus[k]), float(profile.g[k]))
        for k in range(Z + 1)
    ]
    return ('k', 'k_over_z', 't_plus', 't_minus', 'gradient'), rows


def _fixed_point_table(request: ExperimentRequest) -> Table:
    Z = request.cfg.population_size
    points = classify_fixed_points(gradient(_kernel(request)))
    rows = [(p.location, p.location / Z, p.kind) for p in points]
    return ('location', 'location_over_z', 'kind'), rows


def _stationary_table(request: ExperimentRequest) -> Table:
    distribution = _stationary(request)
    Z = request.cfg.population_size
    rows = [(k, k / Z, float(distribution.s[k])) for k in range(Z + 1)]
    return ('k', 'k_over_z', 's_k'), rows


def _coop_index_table(request: ExperimentRequest) -> Table:
    summary = cooperation_index(_stationary(request))
    rows = [(summary.expected_cooperators, summary.cooperation_index_normalized)]
    return ('expected_cooperators', 'normalized_index'), rows


def _sweep_table(request: ExperimentRequest, workers: int) -> Table:
    sweep = request.sweep
    values = linear_grid(sweep.start, sweep.stop, sweep.points)
    if request.command == Command.SWEEP_CHI:
        results = sweep_chi(request.cfg, values, workers)
    else:
        results = sweep_parameter(request.cfg, sweep.parameter, values, workers)
    rows = [(value, s.expected_cooperators, s.cooperation_index_normalized) for value, s in results]
    return (sweep.parameter.value, 'expected_cooperators', 'normalized_index'), rows


def _history_table(request: ExperimentRequest, engine: EngineConfig) -> Table:
    db_path = request.history_db or engine.history_db
    if not db_path:
        raise UsageError("history 需要 --history-db 或引擎配置中的 history_db")
    runs = HistoryManager(db_path).list_runs(limit=request.history_limit)
    rows = [
        (run.id, run.created_at.isoformat(timespec='seconds'), run.command,
         run.row_count, run.digest, run.output_path or '')
        for run in runs
    ]
    return ('id', 'created_at', 'command', 'rows', 'digest', 'output'), rows


def simulation_settings(request: ExperimentRequest, engine: EngineConfig) -> Tuple[int, int]:
    """实际使用的 (burn_in, initial_k)"""
    Z = request.cfg.population_size
    burn_in = request.burn_in if request.burn_in is not None else engine.burn_in_factor * Z
    initial_k = request.initial_k if request.initial_k is not None else Z // 2
    return burn_in, initial_k


def run_experiment(request: ExperimentRequest, engine: Optional[EngineConfig] = None) -> str:
    """
    执行实验并返回 CSV 文本

    Args:
        request: 已校验的实验请求
        engine: 引擎配置，None 时使用默认值
    """
    engine = engine or EngineConfig()
    workers = request.workers or engine.workers
    command = request.command
    logger.log_experiment_start(command.value, request.cfg.model_dump(mode='json'))

    if command == Command.GRADIENT:
        header, rows = _gradient_table(request)
    elif command == Command.FIXED_POINTS:
        header, rows = _fixed_point_table(request)
    elif command == Command.STATIONARY:
        header, rows = _stationary_table(request)
    elif command == Command.COOP_INDEX:
        header, rows = _coop_index_table(request)
    elif command.is_sweep():
        header, rows = _sweep_table(request, workers)
    elif command == Command.SIMULATE:
        burn_in, initial_k = simulation_settings(request, engine)
        if request.steps <= burn_in:
            raise UsageError(f"要求 --steps > 预热步数 {burn_in}")
        reports = run_replicates(
            request.cfg, initial_k, request.steps, burn_in, request.seed,
            replicates=request.replicates, workers=workers,
            chunk_steps=engine.mc_chunk_steps,
        )
        report = pool_reports(reports)
        rows = [(k, float(freq)) for k, freq in enumerate(report.empirical_distribution)]
        metadata = metadata_line(request, burn_in=burn_in, initial_k=initial_k)
        return to_csv(('k', 'empirical_frequency'), rows, metadata)
    elif command == Command.HISTORY:
        header, rows = _history_table(request, engine)
    else:
        raise UsageError(f"未知命令: {command}")

    return to_csv(header, rows, metadata_line(request))

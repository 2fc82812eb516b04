"""
命令行参数解析
把 argv 转换为经过校验的 ExperimentRequest
"""
import argparse
from typing import List, Optional

from pydantic import ValidationError

from config.engine_config import Presets
from schemas.experiment import Command, ExperimentRequest, StationarySolver, SweepParameter
from schemas.population import UpdateMode
from utils.errors import UsageError

# 字段 → 命令行参数，用于错误信息
FIELD_FLAGS = {
    'population_size': '--z',
    'group_size': '--n',
    'threshold': '--m',
    'enhancement': '--f',
    'cost': '--cost',
    'mutation': '--mu',
    'beta_sl': '--beta-sl',
    'beta_ct': '--beta-ct',
    'chi': '--chi',
    'update_mode': '--mode',
    'points': '--points',
    'start': '--start',
    'stop': '--stop',
    'seed': '--seed',
    'steps': '--steps',
    'burn_in': '--burn-in',
    'initial_k': '--initial-k',
    'replicates': '--replicates',
    'workers': '--workers',
    'history_limit': '--limit',
}

DEFAULT_CHI = 0.5


class _Parser(argparse.ArgumentParser):
    """解析失败时抛出 UsageError，而不是直接退出进程"""

    def error(self, message: str):
        raise UsageError(message)


def _population_flags() -> argparse.ArgumentParser:
    preset = Presets.STAG_HUNT
    parent = _Parser(add_help=False)
    group = parent.add_argument_group('种群与博弈参数（默认值为猎鹿博弈预设）')
    group.add_argument('--z', type=int, default=preset['population_size'], help='种群规模 Z')
    group.add_argument('--n', type=int, default=preset['group_size'], help='群体规模 N')
    group.add_argument('--m', type=int, default=None, help='协调阈值 M（默认 N/2）')
    group.add_argument('--f', type=float, default=preset['enhancement'], help='增益因子 F')
    group.add_argument('--cost', type=float, default=preset['cost'], help='合作成本 c')
    group.add_argument('--mu', type=float, default=preset['mutation'], help='突变概率 μ')
    group.add_argument('--beta-sl', type=float, default=preset['beta_sl'], help='SL 选择强度')
    group.add_argument('--beta-ct', type=float, default=preset['beta_ct'], help='CT 选择强度')
    group.add_argument('--chi', type=float, default=DEFAULT_CHI, help='MIXED 模式下使用 SL 的概率 χ')
    group.add_argument('--mode', choices=[m.value for m in UpdateMode], default=UpdateMode.SL.value,
                       help='策略修正方式')
    group.add_argument('--exact-pairing', action='store_true',
                       help='SL 榜样从其余 Z-1 人中抽取（默认允许抽到自己）')
    return parent


def _runtime_flags() -> argparse.ArgumentParser:
    parent = _Parser(add_help=False)
    group = parent.add_argument_group('运行选项')
    group.add_argument('--out', default=None, help='输出 CSV 文件（默认标准输出）')
    group.add_argument('--workers', type=int, default=None, help='并行数（默认取引擎配置）')
    group.add_argument('--config', default=None, help='引擎配置 JSON 文件')
    group.add_argument('--history-db', default=None, help='运行历史 SQLite 数据库')
    group.add_argument('--log-level', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'], default=None,
                       help='日志级别')
    return parent


def _sweep_flags(with_param: bool) -> argparse.ArgumentParser:
    parent = _Parser(add_help=False)
    group = parent.add_argument_group('扫描区间')
    if with_param:
        group.add_argument('--param', required=True, choices=[p.value for p in SweepParameter],
                           help='扫描参数')
    group.add_argument('--start', type=float, default=None, help='起点（χ 默认 0）')
    group.add_argument('--stop', type=float, default=None, help='终点（χ 默认 1）')
    group.add_argument('--points', type=int, default=Presets.DEFAULT_SWEEP_POINTS, help='点数')
    return parent


def _solver_flags() -> argparse.ArgumentParser:
    parent = _Parser(add_help=False)
    parent.add_argument('--solver', choices=[s.value for s in StationarySolver],
                        default=StationarySolver.PRODUCT.value, help='平稳分布求解方式')
    return parent


def _simulate_flags() -> argparse.ArgumentParser:
    parent = _Parser(add_help=False)
    group = parent.add_argument_group('模拟参数')
    group.add_argument('--seed', type=int, default=Presets.DEFAULT_SEED, help='随机种子')
    group.add_argument('--steps', type=int, default=Presets.DEFAULT_STEPS, help='总步数')
    group.add_argument('--burn-in', type=int, default=None, help='预热步数（默认 10·Z）')
    group.add_argument('--initial-k', type=int, default=None, help='初始合作者数（默认 Z/2）')
    group.add_argument('--replicates', type=int, default=1, help='独立重复次数')
    return parent


def build_parser() -> argparse.ArgumentParser:
    """构建带子命令的解析器"""
    parser = _Parser(
        prog='cfdyn',
        description='有限种群中社会学习与反事实思维的合作动力学',
    )
    subparsers = parser.add_subparsers(dest='command', required=True, metavar='command')

    population = _population_flags()
    runtime = _runtime_flags()
    solver = _solver_flags()

    subparsers.add_parser(Command.GRADIENT.value, parents=[population, runtime],
                          help='各状态的 T⁺、T⁻ 与选择梯度')
    subparsers.add_parser(Command.FIXED_POINTS.value, parents=[population, runtime],
                          help='梯度的内部不动点')
    subparsers.add_parser(Command.STATIONARY.value, parents=[population, runtime, solver],
                          help='平稳分布')
    subparsers.add_parser(Command.COOP_INDEX.value, parents=[population, runtime, solver],
                          help='合作指数')
    subparsers.add_parser(Command.SWEEP_CHI.value, parents=[population, runtime, _sweep_flags(False)],
                          help='扫描 χ 的合作指数曲线')
    subparsers.add_parser(Command.SWEEP.value, parents=[population, runtime, _sweep_flags(True)],
                          help='扫描任一标量参数的合作指数')
    subparsers.add_parser(Command.SIMULATE.value, parents=[population, runtime, _simulate_flags()],
                          help='个体层面蒙特卡洛模拟')
    history = subparsers.add_parser(Command.HISTORY.value, parents=[runtime], help='已记录的运行')
    history.add_argument('--limit', type=int, default=20, help='显示条数')
    return parser


def _describe_validation_error(error: ValidationError) -> str:
    messages = []
    for item in error.errors():
        fields = [str(part) for part in item.get('loc', ()) if isinstance(part, str)]
        flag = next((FIELD_FLAGS[f] for f in reversed(fields) if f in FIELD_FLAGS), None)
        message = item.get('msg', '')
        messages.append(f"{flag}: {message}" if flag else message)
    return "; ".join(messages)


def parse_args(argv: Optional[List[str]] = None) -> ExperimentRequest:
    """
    解析命令行

    Raises:
        UsageError: 未知参数、取值越界或违反定义域约束
    """
    args = build_parser().parse_args(argv)
    command = Command(args.command)

    data = {
        'command': command,
        'out': args.out,
        'workers': args.workers,
        'config_path': args.config,
        'history_db': args.history_db,
        'log_level': args.log_level,
    }

    if command == Command.HISTORY:
        # history 不涉及动力学参数，用默认配置占位
        data['cfg'] = _population_payload(_population_flags().parse_args([]), command)
        data['history_limit'] = args.limit
    else:
        data['cfg'] = _population_payload(args, command)

    if command.is_sweep():
        parameter = SweepParameter(getattr(args, 'param', SweepParameter.CHI.value))
        start, stop = args.start, args.stop
        if parameter == SweepParameter.CHI:
            start = 0.0 if start is None else start
            stop = 1.0 if stop is None else stop
        elif start is None or stop is None:
            raise UsageError(f"扫描 {parameter.value} 需要同时给出 --start 与 --stop")
        data['sweep'] = {'parameter': parameter, 'start': start, 'stop': stop, 'points': args.points}

    if command in (Command.STATIONARY, Command.COOP_INDEX):
        data['solver'] = args.solver

    if command == Command.SIMULATE:
        data.update(seed=args.seed, steps=args.steps, burn_in=args.burn_in,
                    initial_k=args.initial_k, replicates=args.replicates)

    try:
        return ExperimentRequest.model_validate(data)
    except ValidationError as e:
        raise UsageError(_describe_validation_error(e)) from e


def _population_payload(args: argparse.Namespace, command: Command) -> dict:
    mode = UpdateMode(args.mode)
    if command == Command.SWEEP_CHI:
        mode = UpdateMode.MIXED
    threshold = args.m if args.m is not None else max(1, args.n // 2)
    return {
        'population_size': args.z,
        'game': {
            'group_size': args.n,
            'threshold': threshold,
            'enhancement': args.f,
            'cost': args.cost,
        },
        'mutation': args.mu,
        'beta_sl': args.beta_sl,
        'beta_ct': args.beta_ct,
        'chi': args.chi,
        'update_mode': mode,
        'exact_pairing': args.exact_pairing,
    }

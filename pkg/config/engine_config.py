"""
引擎配置模块
管理日志、并行度、历史记录等运行参数
"""
from dataclasses import dataclass, fields
from typing import Optional
from pathlib import Path
import json


CONFIG_FILENAME = 'cfdyn_config.json'


@dataclass
class EngineConfig:
    """引擎配置类"""
    log_dir: Optional[str] = None  # 日志目录，None 表示只输出到控制台
    log_level: str = "WARNING"
    workers: int = 4  # 扫描/重复模拟的并行数
    history_db: Optional[str] = None  # 运行历史数据库，None 表示不记录

    # 蒙特卡洛配置
    burn_in_factor: int = 10  # 默认预热步数 = burn_in_factor * Z
    mc_chunk_steps: int = 65536  # 每批预取的随机数行数

    def to_dict(self) -> dict:
        """转换为字典"""
        return {
            'log_dir': self.log_dir,
            'log_level': self.log_level,
            'workers': self.workers,
            'history_db': self.history_db,
            'burn_in_factor': self.burn_in_factor,
            'mc_chunk_steps': self.mc_chunk_steps,
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'EngineConfig':
        """从字典创建配置（忽略未知字段）"""
        known = {f.name for f in fields(cls)}
        return cls(**{key: value for key, value in data.items() if key in known})

    def save(self, path: Optional[Path] = None) -> None:
        """保存配置到文件"""
        if path is None:
            path = Path.home() / f'.{CONFIG_FILENAME}'
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(self.to_dict(), f, indent=2, ensure_ascii=False)

    @classmethod
    def load(cls, path: Optional[Path] = None) -> 'EngineConfig':
        """
        从文件加载配置

        查找顺序：显式路径 > 当前目录 cfdyn_config.json > ~/.cfdyn_config.json > 默认值
        """
        if path is None:
            local_config = Path.cwd() / CONFIG_FILENAME
            if local_config.exists():
                path = local_config
            else:
                path = Path.home() / f'.{CONFIG_FILENAME}'
        path = Path(path)
        if path.exists():
            with open(path, 'r', encoding='utf-8') as f:
                data = json.load(f)
            return cls.from_dict(data)
        return cls()


# 参数预设常量
class Presets:
    """常用参数组"""

    # N 人猎鹿博弈：协调阈值 M = N/2，SL 与 CT 各有一对内部不动点
    STAG_HUNT = {
        'population_size': 50,
        'group_size': 6,
        'threshold': 3,
        'enhancement': 5.5,
        'cost': 1.0,
        'mutation': 0.01,
        'beta_sl': 5.0,
        'beta_ct': 5.0,
    }

    # 同一博弈的 χ 混合修正，χ 扫描的起点
    STAG_HUNT_MIXED = {**STAG_HUNT, 'update_mode': 'mixed', 'chi': 0.5}

    DEFAULT_SEED = 20240101
    DEFAULT_STEPS = 1_000_000
    DEFAULT_SWEEP_POINTS = 21

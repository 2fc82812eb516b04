# Configuration module
from .engine_config import EngineConfig, Presets

__all__ = ['EngineConfig', 'Presets']

# Schemas module
from .game import GameSpec
from .population import PopulationConfig, UpdateMode
from .results import (
    FitnessTable, TransitionKernel, GradientProfile, FixedPoint, Stability,
    StationaryDistribution, CooperationSummary, SimulationReport,
)
from .experiment import Command, SweepParameter, SweepSpec, StationarySolver, ExperimentRequest

__all__ = [
    'GameSpec', 'PopulationConfig', 'UpdateMode',
    'FitnessTable', 'TransitionKernel', 'GradientProfile', 'FixedPoint', 'Stability',
    'StationaryDistribution', 'CooperationSummary', 'SimulationReport',
    'Command', 'SweepParameter', 'SweepSpec', 'StationarySolver', 'ExperimentRequest',
]

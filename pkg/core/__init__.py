# Core module
from .game import payoff_defector, payoff_cooperator
from .fitness import hypergeometric_weight, fitness_defector, fitness_cooperator, build_fitness_table
from .dynamics import (
    Direction, fermi, sl_transitions, ct_transitions, with_mutation,
    build_kernel, gradient, classify_fixed_points,
)
from .markov import transition_matrix, stationary_distribution, stationary_distribution_eigen, cooperation_index
from .mc import PopulationSimulator, step, run, run_replicates, pool_reports
from .sweep import linear_grid, cooperation_at, sweep_parameter, sweep_chi

__all__ = [
    'payoff_defector', 'payoff_cooperator',
    'hypergeometric_weight', 'fitness_defector', 'fitness_cooperator', 'build_fitness_table',
    'Direction', 'fermi', 'sl_transitions', 'ct_transitions', 'with_mutation',
    'build_kernel', 'gradient', 'classify_fixed_points',
    'transition_matrix', 'stationary_distribution', 'stationary_distribution_eigen', 'cooperation_index',
    'PopulationSimulator', 'step', 'run', 'run_replicates', 'pool_reports',
    'linear_grid', 'cooperation_at', 'sweep_parameter', 'sweep_chi',
]

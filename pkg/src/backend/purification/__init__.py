"""
|a8> Purification

Syndrome distributions, dephasing and whirling, the exact flow equations,
recursive schedules, Monte Carlo yield and circuit-level rounds.
"""

from .syndrome_distribution import SyndromeDistribution, WHIRL_PERMUTATION, syndrome_bits, syndrome_index
from .dephasing import dephase, whirl
from .flow_equations import (
    FlowResult,
    elementary_flow,
    full_round_flow,
    full_round_flow_exact,
    flow_a8,
    flow_series,
    stage_bit_errors,
    threshold_a8,
    quadratic_approximation,
)
from .schedule import PurificationLevel, PurificationSchedule, schedule, level_estimate, naive_n0
from .monte_carlo import (
    MonteCarloResult,
    chain_n0_half,
    chain_success_probability,
    closed_form_success,
    monte_carlo,
    solve_n0_half,
)
from .purification_circuits import (
    a8_state_tableau,
    read_syndrome,
    whirl_circuit,
    cyclic_shift_circuit,
    elementary_round_circuit,
    elementary_round,
    elementary_round_branches,
)

__all__ = [
    'SyndromeDistribution',
    'WHIRL_PERMUTATION',
    'syndrome_bits',
    'syndrome_index',
    'dephase',
    'whirl',
    'FlowResult',
    'elementary_flow',
    'full_round_flow',
    'full_round_flow_exact',
    'flow_a8',
    'flow_series',
    'stage_bit_errors',
    'threshold_a8',
    'quadratic_approximation',
    'PurificationLevel',
    'PurificationSchedule',
    'schedule',
    'level_estimate',
    'naive_n0',
    'MonteCarloResult',
    'monte_carlo',
    'closed_form_success',
    'chain_success_probability',
    'chain_n0_half',
    'solve_n0_half',
    'a8_state_tableau',
    'read_syndrome',
    'whirl_circuit',
    'cyclic_shift_circuit',
    'elementary_round_circuit',
    'elementary_round',
    'elementary_round_branches',
]

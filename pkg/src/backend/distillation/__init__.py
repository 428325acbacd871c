"""
|a4> Magic-State Distillation

The 15-qubit punctured Reed-Muller code and its exact distillation flow.
"""

from .reed_muller import RMCode, build_rm_code, transversal_phase_exponent, gf2_rank
from .a4_flow import (
    A4FlowResult,
    exact_flow_a4,
    projection_factor,
    acceptance_stabilizer_sum,
    threshold_a4,
    a4_schedule,
    dephasing_flip_overlap,
    flow_curve_a4,
)

__all__ = [
    'RMCode',
    'build_rm_code',
    'transversal_phase_exponent',
    'gf2_rank',
    'A4FlowResult',
    'exact_flow_a4',
    'projection_factor',
    'acceptance_stabilizer_sum',
    'threshold_a4',
    'a4_schedule',
    'dephasing_flip_overlap',
    'flow_curve_a4',
]

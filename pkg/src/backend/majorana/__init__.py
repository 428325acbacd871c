"""
Majorana Stabilizer Engine

Exact stabilizer simulation of braid gates, fusion measurements and
Clifford exponents on Majorana modes.

Modules:
- pauli_string: Signed Pauli operators and the Jordan-Wigner embedding
- stabilizer_tableau: Stabilizer states, measurement update, canonical form
- braid_circuit: Instructions, classical control, execution and branch enumeration
- group_enumeration: Braid image group order and state orbits
"""

from .pauli_string import (
    PauliString,
    jordan_wigner,
    monomial,
    hermitian_monomial,
    quarter_turn_conjugate,
)
from .stabilizer_tableau import (
    StabilizerTableau,
    parity_operator,
    new_vacuum,
    apply_braid,
    measure_pair,
    measure_quartet,
)
from .braid_circuit import (
    BraidCircuit,
    Braid,
    BraidInverse,
    MeasurePair,
    MeasureQuartet,
    Exponent,
    ClassicallyControlled,
    Condition,
    OutcomeRecord,
    CircuitRun,
    run_circuit,
    enumerate_branches,
    braid_word_nonlocal,
    compile_signed_permutation,
)
from .group_enumeration import enumerate_image_group, expected_group_order, orbit_graph, orbit_size

__all__ = [
    'PauliString',
    'jordan_wigner',
    'monomial',
    'hermitian_monomial',
    'quarter_turn_conjugate',
    'StabilizerTableau',
    'parity_operator',
    'new_vacuum',
    'apply_braid',
    'measure_pair',
    'measure_quartet',
    'BraidCircuit',
    'Braid',
    'BraidInverse',
    'MeasurePair',
    'MeasureQuartet',
    'Exponent',
    'ClassicallyControlled',
    'Condition',
    'OutcomeRecord',
    'CircuitRun',
    'run_circuit',
    'enumerate_branches',
    'braid_word_nonlocal',
    'compile_signed_permutation',
    'enumerate_image_group',
    'expected_group_order',
    'orbit_graph',
    'orbit_size',
]

"""
Ancilla-Assisted Protocols

Logical qubits on quartets, |a8> preparation, quartet measurement and the
quartic exponent from ancillas, controlled-Z and pi/8 gate injection.

Modules:
- logical_qubit: Quartet encoding, logical Paulis, one-qubit braid group
- ancilla_protocols: |a8>-consuming and |a8>-producing protocol circuits
- gate_injection: pi/8 gate from |a4>, noisy ancilla models, resource ledger
- verification: Branch-by-branch fidelity checks of every protocol
"""

from .logical_qubit import LogicalQubit, encode, decode, logical_matrix, clifford_group_one_qubit
from .ancilla_protocols import (
    CZ_METHODS,
    ProtocolResult,
    QuartetMeasurement,
    prepare_a8_via_O3,
    prepare_a8_via_O2,
    prepare_a8_via_O2_branches,
    quartet_measurement_circuit,
    measure_quartet_with_a8,
    exponent_circuit,
    exponent_from_quartet_measurements,
    controlled_z_circuit,
    controlled_Z,
    controlled_z_branches,
    correction_table,
    syndrome_of,
)
from .gate_injection import (
    ResourceLedger,
    inject_T,
    injection_circuit,
    injection_branches,
    noisy_a4_ensemble,
    noisy_a8_ensemble,
    injection_infidelity,
    controlled_z_infidelity,
)
from .verification import ProtocolCheck, PROTOCOL_CHECKS, PROTOCOL_GROUPS, resolve_protocols, verify_protocol, verify_all

__all__ = [
    'LogicalQubit',
    'encode',
    'decode',
    'logical_matrix',
    'clifford_group_one_qubit',
    'CZ_METHODS',
    'ProtocolResult',
    'QuartetMeasurement',
    'prepare_a8_via_O3',
    'prepare_a8_via_O2',
    'prepare_a8_via_O2_branches',
    'quartet_measurement_circuit',
    'measure_quartet_with_a8',
    'exponent_circuit',
    'exponent_from_quartet_measurements',
    'controlled_z_circuit',
    'controlled_Z',
    'controlled_z_branches',
    'correction_table',
    'syndrome_of',
    'ResourceLedger',
    'inject_T',
    'injection_circuit',
    'injection_branches',
    'noisy_a4_ensemble',
    'noisy_a8_ensemble',
    'injection_infidelity',
    'controlled_z_infidelity',
    'ProtocolCheck',
    'PROTOCOL_CHECKS',
    'PROTOCOL_GROUPS',
    'resolve_protocols',
    'verify_protocol',
    'verify_all',
]

"""
Dense State Vector Oracle

Brute-force ground truth for the stabilizer engine, the |a8> syndrome
basis and every protocol that leaves the Clifford formalism.
"""

from .dense_state import (
    DenseState,
    Ensemble,
    MAX_QUBITS,
    fidelity,
    ensemble_fidelity,
    schmidt_rank,
    qubits_of_modes,
    apply_exponent,
    project_monomial,
)
from .syndrome_basis import (
    syndrome_basis,
    psi_state,
    a8_state,
    a4_state,
    even_mixed_density,
    dephased_density,
    syndrome_overlaps,
)

__all__ = [
    'DenseState',
    'Ensemble',
    'MAX_QUBITS',
    'fidelity',
    'ensemble_fidelity',
    'schmidt_rank',
    'qubits_of_modes',
    'apply_exponent',
    'project_monomial',
    'syndrome_basis',
    'psi_state',
    'a8_state',
    'a4_state',
    'even_mixed_density',
    'dephased_density',
    'syndrome_overlaps',
]

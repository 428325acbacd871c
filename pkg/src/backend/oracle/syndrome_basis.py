"""
Dense |Psi_s> basis of the |a8> code and ancilla reference vectors
"""
import logging
from functools import lru_cache
from typing import Tuple, Union

import numpy as np

from ..majorana.stabilizer_tableau import parity_operator
from ..purification.purification_circuits import a8_state_tableau
from ..purification.syndrome_distribution import N_SYNDROMES, SyndromeDistribution
from .dense_state import DenseState, Ensemble

logger = logging.getLogger(__name__)

A8_QUBITS = 4


@lru_cache(maxsize=None)
def syndrome_basis() -> Tuple[DenseState, ...]:
    """The eight |Psi_s> vectors, each fixed by S_j = (-1)^{s_j} and Q = +1"""
    return tuple(DenseState.from_tableau(a8_state_tableau(s)) for s in range(N_SYNDROMES))


def psi_state(s: int) -> DenseState:
    return syndrome_basis()[s].copy()


def a8_state() -> DenseState:
    """|a8> = (|0000> + |1111>)/sqrt(2) up to phase"""
    return psi_state(0)


def a4_state() -> DenseState:
    """|a4> = (|0bar> + e^{i pi/4} |1bar>)/sqrt(2) on one quartet (|0bar> = |00>, |1bar> = |11>)"""
    amplitudes = np.zeros(4, dtype=complex)
    amplitudes[0] = 1.0
    amplitudes[3] = np.exp(1j * np.pi / 4)
    return DenseState.from_amplitudes(amplitudes)


def even_mixed_density(n_qubits: int = A8_QUBITS) -> np.ndarray:
    """Maximally mixed state on the Q = +1 sector"""
    diagonal = np.diag(parity_operator(2 * n_qubits).to_matrix()).real
    projector = np.diag((1 + diagonal) / 2)
    return projector / projector.trace()


def dephased_density(distribution: SyndromeDistribution) -> np.ndarray:
    """Sum_s p(s) |Psi_s><Psi_s|"""
    dim = 2 ** A8_QUBITS
    rho = np.zeros((dim, dim), dtype=complex)
    for s, psi in enumerate(syndrome_basis()):
        rho += distribution.p[s] * np.outer(psi.amplitudes, psi.amplitudes.conj())
    return rho


def syndrome_overlaps(rho: Union[np.ndarray, Ensemble, DenseState],
                      tolerance: float = 1e-9) -> SyndromeDistribution:
    """
    Diagonal overlaps p(s) = <Psi_s| rho |Psi_s> of an 8-mode state.

    Args:
        rho: Density matrix, weighted pure-state ensemble, or pure state
        tolerance: Allowed weight outside the even-parity sector

    Raises:
        ValueError: if rho has support on the odd sector
    """
    basis = syndrome_basis()
    if isinstance(rho, DenseState):
        rho = [(1.0, rho)]
    if isinstance(rho, np.ndarray):
        if rho.shape != (2 ** A8_QUBITS, 2 ** A8_QUBITS):
            raise ValueError(f"Density matrix must be 16x16, got {rho.shape}")
        overlaps = np.array([np.real(np.vdot(psi.amplitudes, rho @ psi.amplitudes)) for psi in basis])
        trace = float(np.real(np.trace(rho)))
    else:
        overlaps = np.zeros(N_SYNDROMES)
        trace = 0.0
        for weight, state in rho:
            if state.n_qubits != A8_QUBITS:
                raise ValueError(f"Syndrome overlaps need an 8-mode state, got {state.n_modes} modes")
            trace += weight * state.norm() ** 2
            overlaps += weight * np.array([abs(np.vdot(psi.amplitudes, state.amplitudes)) ** 2
                                           for psi in basis])
    missing = trace - overlaps.sum()
    if missing > tolerance:
        raise ValueError(f"State has weight {missing:.3e} outside the even-parity sector")
    return SyndromeDistribution(overlaps / overlaps.sum())

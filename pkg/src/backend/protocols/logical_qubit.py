"""
Logical Qubits on Majorana Quartets

A quartet (a, b, c, d) with -c_a c_b c_c c_d = +1 carries one qubit with
sigma^z = -i c_a c_b, sigma^x = -i c_b c_c, sigma^y = -i c_a c_c.
"""
import logging
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

import numpy as np

from ..majorana.braid_circuit import BraidCircuit, run_circuit
from ..majorana.pauli_string import PauliString, hermitian_monomial
from ..oracle.dense_state import DenseState

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LogicalQubit:
    quartet: Tuple[int, int, int, int] = (1, 2, 3, 4)

    def __post_init__(self):
        if len(set(self.quartet)) != 4:
            raise ValueError(f"Logical qubit needs four distinct modes, got {self.quartet}")

    def sigma_z(self, n_qubits: int) -> PauliString:
        a, b, _, _ = self.quartet
        return hermitian_monomial((a, b), n_qubits)

    def sigma_x(self, n_qubits: int) -> PauliString:
        _, b, c, _ = self.quartet
        return hermitian_monomial((b, c), n_qubits)

    def sigma_y(self, n_qubits: int) -> PauliString:
        a, _, c, _ = self.quartet
        return hermitian_monomial((a, c), n_qubits)

    def code_condition(self, n_qubits: int) -> PauliString:
        """-c_a c_b c_c c_d, which is +1 on the computational subspace"""
        return -hermitian_monomial(self.quartet, n_qubits)

    def in_code_space(self, state, tolerance: float = 1e-10) -> bool:
        condition = self.code_condition(state.n_qubits)
        if isinstance(state, DenseState):
            return abs(state.expectation(condition) - 1.0) < tolerance
        return state.expectation(condition) == 1

    def hadamard(self, n_modes: int) -> BraidCircuit:
        """B_ab B_bc B_ab, the logical Hadamard up to phase"""
        a, b, c, _ = self.quartet
        return BraidCircuit(n_modes).braid(a, b).braid(b, c).braid(a, b)

    def phase_gate(self, n_modes: int) -> BraidCircuit:
        """B_ab = exp(-i pi/4 sigma^z), i.e. K = diag(1, i) up to phase"""
        a, b, _, _ = self.quartet
        return BraidCircuit(n_modes).braid(a, b)


def encode(amplitudes: Sequence[complex]) -> DenseState:
    """
    Logical state on consecutive quartets 1-4, 5-8, ...

    Logical basis vector |x1 x2 ...> is the physical state with both qubits
    of quartet k equal to x_k.
    """
    amplitudes = np.asarray(amplitudes, dtype=complex)
    n_logical = int(round(np.log2(len(amplitudes))))
    if 2 ** n_logical != len(amplitudes):
        raise ValueError(f"Amplitude count {len(amplitudes)} is not a power of two")
    physical = np.zeros(4 ** n_logical, dtype=complex)
    for index, value in enumerate(amplitudes):
        bits = [(index >> (n_logical - 1 - k)) & 1 for k in range(n_logical)]
        doubled = int(''.join(f"{b}{b}" for b in bits), 2)
        physical[doubled] = value
    return DenseState.from_amplitudes(physical)


def decode(state: DenseState, tolerance: float = 1e-10) -> np.ndarray:
    """Logical amplitudes of a state inside the code space"""
    n_logical = state.n_qubits // 2
    amplitudes = np.zeros(2 ** n_logical, dtype=complex)
    for index in range(2 ** n_logical):
        bits = [(index >> (n_logical - 1 - k)) & 1 for k in range(n_logical)]
        amplitudes[index] = state.amplitudes[int(''.join(f"{b}{b}" for b in bits), 2)]
    leaked = 1.0 - float(np.vdot(amplitudes, amplitudes).real)
    if leaked > tolerance:
        raise ValueError(f"State has weight {leaked:.3e} outside the code space")
    return amplitudes


def logical_matrix(circuit: BraidCircuit) -> np.ndarray:
    """2x2 logical action of a unitary braid circuit on one quartet (modes 1-4)"""
    if circuit.n_modes != 4 or not circuit.is_unitary():
        raise ValueError("Logical matrix needs a unitary circuit on four modes")
    columns = []
    for basis in ([1, 0], [0, 1]):
        columns.append(decode(run_circuit(circuit, encode(basis)).state))
    return np.array(columns).T


def _phase_key(matrix: np.ndarray, decimals: int = 8) -> bytes:
    flat = matrix.flatten()
    lead = flat[np.nonzero(np.abs(flat) > 1e-9)[0][0]]
    normalized = matrix * (abs(lead) / lead)
    return (np.round(normalized, decimals) + (0.0 + 0.0j)).tobytes()


def clifford_group_one_qubit() -> List[np.ndarray]:
    """Closure of the braid images on one quartet, modulo phase"""
    generators = [logical_matrix(BraidCircuit(4).braid(p, q))
                  for p, q in combinations(range(1, 5), 2)]
    identity = np.eye(2, dtype=complex)
    seen: Dict[bytes, np.ndarray] = {_phase_key(identity): identity}
    frontier = deque([identity])
    while frontier:
        element = frontier.popleft()
        for gen in generators:
            child = gen @ element
            key = _phase_key(child)
            if key not in seen:
                seen[key] = child
                frontier.append(child)
    logger.info(f"One-qubit braid image has {len(seen)} elements")
    return list(seen.values())

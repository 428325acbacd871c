"""
Magic-State Gate Injection

pi/8 phase gate injected from |a4> with a sigma^z sigma^z measurement, a
logical CNOT and a conditional K = diag(1, i), plus noisy ancilla models and
a resource ledger.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..majorana.braid_circuit import Braid, BraidCircuit, CircuitRun, enumerate_branches, run_circuit
from ..majorana.pauli_string import hermitian_monomial
from ..oracle.dense_state import DenseState, Ensemble, ensemble_fidelity
from ..oracle.syndrome_basis import a4_state, psi_state
from .ancilla_protocols import (
    LOGICAL_MODES,
    ProtocolResult,
    controlled_z_branches,
    controlled_z_circuit,
    controlled_z_input,
    leading_block,
)
from .logical_qubit import LogicalQubit, encode

logger = logging.getLogger(__name__)

T_PHASE = np.exp(1j * np.pi / 4)


@dataclass
class ResourceLedger:
    """Counts of consumed ancillas and physical operations"""
    a8_consumed: int = 0
    a4_consumed: int = 0
    braids: int = 0
    measurements: int = 0
    by_protocol: Dict[str, int] = field(default_factory=dict)

    def record(self, name: str, circuit: BraidCircuit, a8: int = 0, a4: int = 0) -> None:
        self.a8_consumed += a8
        self.a4_consumed += a4
        self.measurements += circuit.n_measurements
        self.braids += len(circuit) - circuit.n_measurements
        self.by_protocol[name] = self.by_protocol.get(name, 0) + 1

    def to_dict(self):
        return {
            "a8_consumed": self.a8_consumed,
            "a4_consumed": self.a4_consumed,
            "braids": self.braids,
            "measurements": self.measurements,
            "by_protocol": dict(self.by_protocol),
        }


def injection_circuit(cz_method: str = "via_O3") -> BraidCircuit:
    """
    Input on quartet 1-4, |a4> on quartet 5-8.

    Measures sigma^z sigma^z, applies CNOT = H2 CZ H2, measures the ancilla
    sigma^z and applies K to the input on outcome 1.
    """
    cz = controlled_z_circuit(cz_method)
    target_h = LogicalQubit((5, 6, 7, 8)).hadamard(cz.n_modes)
    circuit = BraidCircuit(cz.n_modes).measure_quartet(1, 2, 5, 6)
    circuit = circuit.concat(target_h).concat(cz).concat(target_h)
    circuit.measure_pair(5, 6)
    circuit.controlled(f"t{circuit.n_measurements}", Braid(1, 2))
    return circuit


def injection_input(logical: DenseState, ancilla: Optional[DenseState] = None,
                    cz_method: str = "via_O3", a8: Optional[DenseState] = None) -> DenseState:
    ancilla = ancilla if ancilla is not None else a4_state()
    return controlled_z_input(logical.tensor(ancilla), cz_method, a8)


def inject_T(logical: DenseState, ancilla: Optional[DenseState] = None, cz_method: str = "via_O3",
             rng: Optional[np.random.Generator] = None, forced: Optional[Sequence[int]] = None,
             ledger: Optional[ResourceLedger] = None) -> ProtocolResult:
    """
    Apply the pi/8 gate diag(1, e^{i pi/4}) to a one-quartet logical state.

    Args:
        logical: 4-mode dense input in the code space
        ancilla: |a4> or a noisy copy; the ideal state by default
        cz_method: how the CNOT's controlled-Z is realised
        ledger: optional ResourceLedger updated with the consumed ancillas
    """
    if logical.n_modes != 4:
        raise ValueError(f"Injection acts on one quartet, got {logical.n_modes} modes")
    circuit = injection_circuit(cz_method)
    run = run_circuit(circuit, injection_input(logical, ancilla, cz_method), rng, forced)
    if ledger is not None:
        ledger.record("inject_T", circuit, a8=int(cz_method == "via_a8"), a4=1)
    output = leading_block(run.state, 4) if run.probability > 0 else None
    return ProtocolResult("inject_T", run.record.bits, run.probability, output)


def injection_branches(logical: DenseState, ancilla: Optional[DenseState] = None,
                       cz_method: str = "via_O3") -> List[CircuitRun]:
    return enumerate_branches(injection_circuit(cz_method), injection_input(logical, ancilla, cz_method))


def t_gate_target(amplitudes: Sequence[complex]) -> DenseState:
    """Encoded diag(1, e^{i pi/4}) applied to logical amplitudes (alpha, beta)"""
    alpha, beta = amplitudes
    return encode([alpha, T_PHASE * beta])


# ----------------------------------------------------------------------
# Noisy ancillas
# ----------------------------------------------------------------------

def noisy_a4_ensemble(eps: float) -> Ensemble:
    """Dephased |a4>: (1 - eps) |a4><a4| + eps sigma^z |a4><a4| sigma^z"""
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"Error rate must lie in [0, 1], got {eps}")
    clean = a4_state()
    flipped = clean.apply_pauli(hermitian_monomial((1, 2), clean.n_qubits))
    return [(1.0 - eps, clean), (eps, flipped)]


def noisy_a8_ensemble(eps: float) -> Ensemble:
    """Bimodal |a8>: weight 1 - eps on |Psi_0>, eps/7 on each other syndrome"""
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"Error rate must lie in [0, 1], got {eps}")
    return [(1.0 - eps, psi_state(0))] + [(eps / 7.0, psi_state(s)) for s in range(1, 8)]


def injection_infidelity(amplitudes: Sequence[complex], ancillas: Ensemble,
                         cz_method: str = "via_O3") -> float:
    """1 - <T psi| rho_out |T psi> for an ensemble of ancilla copies"""
    logical = encode(amplitudes)
    output: Ensemble = []
    for weight, ancilla in ancillas:
        for run in injection_branches(logical, ancilla, cz_method):
            if weight * run.probability > 0:
                output.append((weight * run.probability, leading_block(run.state, 4)))
    return 1.0 - ensemble_fidelity(t_gate_target(amplitudes), output)


def controlled_z_infidelity(amplitudes: Sequence[complex], a8_ensemble: Ensemble) -> float:
    """Infidelity of the via_a8 controlled-Z fed with a mixture of |Psi_s> ancillas"""
    logical = encode(amplitudes)
    target = encode(np.asarray(amplitudes, dtype=complex) * np.array([1, 1, 1, -1]))
    keep = list(range(1, LOGICAL_MODES // 2 + 1))
    output: Ensemble = []
    for weight, a8 in a8_ensemble:
        for run in controlled_z_branches(logical, "via_a8", a8):
            for share, part in run.state.schmidt_decomposition(keep):
                output.append((weight * run.probability * share, part))
    return 1.0 - ensemble_fidelity(target, output)

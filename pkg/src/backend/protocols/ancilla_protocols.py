"""
Ancilla-Assisted Protocols

Preparation of |a8> from quartet measurements or a quartic exponent,
measurement of a quartet charge by consuming |a8>, the quartic exponent
built from quartet measurements, and the logical controlled-Z.

Every protocol is expressed as a BraidCircuit with classically controlled
corrections, so it runs unchanged on the stabilizer and dense engines.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..majorana.braid_circuit import (
    Braid,
    BraidCircuit,
    BraidInverse,
    CircuitRun,
    ClassicallyControlled,
    Exponent,
    compile_signed_permutation,
    enumerate_branches,
    run_circuit,
)
from ..majorana.pauli_string import hermitian_monomial
from ..majorana.stabilizer_tableau import StabilizerTableau
from ..oracle.dense_state import DenseState
from ..purification.purification_circuits import (
    A8_MODES,
    STABILIZER_MODES,
    a8_state_tableau,
    syndrome_fix_circuit,
)

logger = logging.getLogger(__name__)

ENGINES = ("tableau", "dense")
CZ_METHODS = ("via_O3", "via_O2", "via_a8")

# Paired states whose pair structure covers the a8 stabilizers
O3_PAIRING = {1: 1, 2: 7, 3: 2, 4: 8, 5: 3, 6: 5, 7: 4, 8: 6}
O3_EXPONENT_MODES = (1, 2, 3, 6)
# The exponent leaves S1 = -1, S2 = S3 = +1
O3_RAW_SYNDROME = 4
O2_PAIRING = {1: 1, 2: 5, 3: 2, 4: -6, 5: 3, 6: 7, 7: 4, 8: -8}
O2_MEASURED_QUARTET = (5, 6, 7, 8)
O2_CORRECTION = ("t1^1", (3, 7))

# Quartet measurement by teleportation through |a8>; labels 1-4 carry the
# measured quartet, 5-12 the ancilla
QUARTET_RESHUFFLE = {1: 1, 2: 3, 3: 5, 4: 7, 5: 2, 6: -4, 7: 6, 8: -8}
QUARTET_MEASURED_PAIRS = ((1, 2), (3, 4), (5, 6), (7, 8))
QUARTET_CORRECTIONS = (("t1", (2, 9)), ("t2", (4, 10)), ("t3", (6, 11)), ("t4", (8, 12)))

# Logical two-qubit layout: quartets 1-4 and 5-8, ancilla pair 9-10, |a8> on 11-18
LOGICAL_MODES = 8
ANCILLA_PAIR = (9, 10)
A8_BLOCK = tuple(range(11, 19))
CZ_EXPONENT_LABELS = (4, 3, 5, 6)


@dataclass
class ProtocolResult:
    """Outcome of one protocol run"""
    name: str
    bits: List[int]
    probability: float
    state: object
    details: Dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "name": self.name,
            "bits": list(self.bits),
            "probability": self.probability,
            **self.details,
        }


@dataclass
class QuartetMeasurement:
    """
    Quartet charge measured by consuming |a8>.

    parity is the XOR of the four pair outcomes; parity 0 projects the input
    onto the -1 eigenspace of c_1 c_2 c_3 c_4.
    """
    parity: int
    bits: List[int]
    probability: float
    state: object

    @property
    def eigenvalue(self) -> int:
        return -1 if self.parity == 0 else 1


def _check_engine(engine: str) -> None:
    if engine not in ENGINES:
        raise ValueError(f"Unknown engine {engine!r}; expected one of {ENGINES}")


def as_engine(tableau: StabilizerTableau, engine: str):
    """Stabilizer state in the representation the engine expects"""
    _check_engine(engine)
    return tableau if engine == "tableau" else DenseState.from_tableau(tableau)


def leading_block(state, n_modes: int):
    """
    Reduced state of the first n_modes modes.

    Raises:
        ValueError: if those modes are entangled with the rest
    """
    if isinstance(state, StabilizerTableau):
        return state.restrict(n_modes)
    return state.factor_out(list(range(1, n_modes // 2 + 1)))


def stabilizer_signs(state, offset: int = 0) -> Tuple[int, int, int]:
    """Expectations of S1, S2, S3 on the 8-mode block after offset, rounded"""
    values = []
    for j in (1, 2, 3):
        modes = tuple(p + offset for p in STABILIZER_MODES[j])
        observable = -hermitian_monomial(modes, state.n_modes // 2)
        values.append(int(round(float(np.real(state.expectation(observable))))))
    return tuple(values)


def syndrome_of(state, offset: int = 0) -> int:
    """
    Syndrome index of an 8-mode block on either engine.

    Raises:
        ValueError: if some S_j is not determined
    """
    s = 0
    for j, value in zip((1, 2, 3), stabilizer_signs(state, offset)):
        if value not in (1, -1):
            raise ValueError(f"S{j} is not determined on modes {offset + 1}..{offset + 8}")
        s = 2 * s + (0 if value == 1 else 1)
    return s


def correction_table(circuit: BraidCircuit) -> List[Tuple[str, str]]:
    """(condition, instruction) pairs of every classically controlled step"""
    rows = []
    for instruction in circuit:
        if isinstance(instruction, ClassicallyControlled):
            inner = instruction.instruction
            rows.append((str(instruction.condition), f"{type(inner).__name__}{inner.modes}"))
    return rows


# ----------------------------------------------------------------------
# |a8> preparation
# ----------------------------------------------------------------------

def o3_preparation_circuit(corrected: bool = True) -> BraidCircuit:
    """Pairing braids, exp(i pi/4 c1 c2 c3 c6) and the fixed syndrome fix-up"""
    circuit = compile_signed_permutation(O3_PAIRING, A8_MODES)
    circuit.exponent(O3_EXPONENT_MODES, -1)
    if corrected:
        circuit = circuit.concat(syndrome_fix_circuit(O3_RAW_SYNDROME))
    return circuit


def prepare_a8_via_O3(engine: str = "tableau") -> ProtocolResult:
    """
    Deterministic |a8> from the vacuum with one quartic exponent.

    The exponent always lands on syndrome O3_RAW_SYNDROME, so the fix-up is
    one double exchange fixed in advance; nothing is read off the state.
    """
    start = as_engine(StabilizerTableau.vacuum(A8_MODES // 2), engine)
    raw = run_circuit(o3_preparation_circuit(corrected=False), start).state
    final = run_circuit(syndrome_fix_circuit(O3_RAW_SYNDROME), raw).state
    logger.info(f"O3 preparation: fixed fix-up for raw syndrome {O3_RAW_SYNDROME}")
    return ProtocolResult("O3->O1", [], 1.0, final,
                          {"raw_syndrome": O3_RAW_SYNDROME, "raw_state": raw})


def o2_preparation_circuit() -> BraidCircuit:
    circuit = compile_signed_permutation(O2_PAIRING, A8_MODES)
    circuit.measure_quartet(*O2_MEASURED_QUARTET)
    condition, (p, q) = O2_CORRECTION
    circuit.controlled(condition, Braid(p, q))
    circuit.controlled(condition, Braid(p, q))
    return circuit


def prepare_a8_via_O2(engine: str = "tableau", rng: Optional[np.random.Generator] = None,
                      forced: Optional[Sequence[int]] = None) -> ProtocolResult:
    """|a8> from the vacuum with one measurement of c5 c6 c7 c8 and a Pauli fix-up"""
    start = as_engine(StabilizerTableau.vacuum(A8_MODES // 2), engine)
    run = run_circuit(o2_preparation_circuit(), start, rng, forced)
    return ProtocolResult("O2->O1", run.record.bits, run.probability, run.state)


def prepare_a8_via_O2_branches(engine: str = "tableau") -> List[CircuitRun]:
    start = as_engine(StabilizerTableau.vacuum(A8_MODES // 2), engine)
    return enumerate_branches(o2_preparation_circuit(), start)


# ----------------------------------------------------------------------
# Quartet measurement through |a8>
# ----------------------------------------------------------------------

def quartet_measurement_circuit(n_modes: int, quartet: Sequence[int], ancilla: Sequence[int],
                                move_back: bool = True) -> BraidCircuit:
    """
    Measure c_q1 c_q2 c_q3 c_q4 by consuming an |a8> on the ancilla modes.

    Four pair measurements follow the reshuffle; the input content is
    teleported onto ancilla modes 5-8 and, with move_back, braided back onto
    the quartet. The quartet charge is -(-1)^(t1^t2^t3^t4).
    """
    quartet, ancilla = tuple(quartet), tuple(ancilla)
    if len(quartet) != 4 or len(ancilla) != A8_MODES:
        raise ValueError("Quartet measurement needs four quartet modes and eight ancilla modes")
    local = compile_signed_permutation(QUARTET_RESHUFFLE, 12)
    for p, q in QUARTET_MEASURED_PAIRS:
        local.measure_pair(p, q)
    for condition, (p, q) in QUARTET_CORRECTIONS:
        local.controlled(condition, Braid(p, q))
        local.controlled(condition, Braid(p, q))
    if move_back:
        for k in range(1, 5):
            local.append(BraidInverse(k, 8 + k))
    mapping = {k + 1: p for k, p in enumerate(quartet + ancilla)}
    return local.relabel(mapping, n_modes)


def measure_quartet_with_a8(state, ancilla=None, rng: Optional[np.random.Generator] = None,
                            forced: Optional[Sequence[int]] = None) -> QuartetMeasurement:
    """
    Measure the quartet charge of a 4-mode state using only pair
    measurements, braids and one |a8>.

    Args:
        state: 4-mode input on either engine
        ancilla: |a8> on the matching engine; the ideal one by default
    """
    if state.n_modes != 4:
        raise ValueError(f"Quartet measurement acts on a 4-mode input, got {state.n_modes} modes")
    if ancilla is None:
        engine = "tableau" if isinstance(state, StabilizerTableau) else "dense"
        ancilla = as_engine(a8_state_tableau(0), engine)
    circuit = quartet_measurement_circuit(12, (1, 2, 3, 4), tuple(range(5, 13)))
    run = run_circuit(circuit, state.tensor(ancilla), rng, forced)
    parity = run.record.parity()
    output = leading_block(run.state, 4) if run.probability > 0 else None
    return QuartetMeasurement(parity, run.record.bits, run.probability, output)


# ----------------------------------------------------------------------
# Quartic exponent from quartet measurements
# ----------------------------------------------------------------------

def exponent_circuit(n_modes: int, modes: Sequence[int], ancilla_pair: Sequence[int],
                     a8_modes: Optional[Sequence[int]] = None) -> BraidCircuit:
    """
    Circuit realising exp(i pi/4 c_a c_b c_c c_d) with an ancilla pair in |0>.

    Measures c_a c_b c_d c_x (outcome z), then -i c_c c_x (outcome y), undoes
    exp(-y pi/4 c_c c_y) and, when yz = -1, applies c_a c_b c_c c_d. With
    a8_modes the first measurement is replaced by the teleported quartet
    measurement, which consumes that |a8>.
    """
    a, b, c, d = modes
    x, y = ancilla_pair
    if a8_modes is None:
        circuit = BraidCircuit(n_modes).measure_quartet(a, b, d, x)
        z_terms = "t1"
    else:
        circuit = quartet_measurement_circuit(n_modes, (a, b, d, x), a8_modes)
        z_terms = "t1^t2^t3^t4^1"
    circuit.measure_pair(c, x)
    y_index = circuit.n_measurements
    circuit.controlled(f"t{y_index}^1", Exponent((c, y), -1))
    circuit.controlled(f"t{y_index}", Exponent((c, y), 1))
    flip = f"{z_terms}^t{y_index}"
    circuit.controlled(flip, Exponent((a, b), -2))
    circuit.controlled(flip, Exponent((c, d), -2))
    return circuit


def exponent_from_quartet_measurements(state, modes: Sequence[int], ancilla_pair: Sequence[int],
                                       a8_modes: Optional[Sequence[int]] = None,
                                       rng: Optional[np.random.Generator] = None,
                                       forced: Optional[Sequence[int]] = None) -> ProtocolResult:
    """Apply exp(i pi/4 c_a c_b c_c c_d) to a state holding the ancilla pair in |0>"""
    circuit = exponent_circuit(state.n_modes, modes, ancilla_pair, a8_modes)
    run = run_circuit(circuit, state, rng, forced)
    return ProtocolResult("O2->O3", run.record.bits, run.probability, run.state)


# ----------------------------------------------------------------------
# Controlled-Z
# ----------------------------------------------------------------------

def cz_mode_count(method: str) -> int:
    if method == "via_O3":
        return LOGICAL_MODES
    if method == "via_O2":
        return ANCILLA_PAIR[1]
    if method == "via_a8":
        return A8_BLOCK[-1]
    raise ValueError(f"Unknown controlled-Z method {method!r}; expected one of {CZ_METHODS}")


def controlled_z_circuit(method: str = "via_O3") -> BraidCircuit:
    """
    Logical controlled-Z on quartets 1-4 and 5-8, up to a global phase:
    B34 B56 exp(-i pi/4 c3 c4 c5 c6).
    """
    n_modes = cz_mode_count(method)
    circuit = BraidCircuit(n_modes).braid(3, 4).braid(5, 6)
    if method == "via_O3":
        return circuit.exponent((3, 4, 5, 6), 1)
    a8_modes = A8_BLOCK if method == "via_a8" else None
    return circuit.concat(exponent_circuit(n_modes, CZ_EXPONENT_LABELS, ANCILLA_PAIR, a8_modes))


def controlled_z_input(logical, method: str = "via_O3", a8=None):
    """
    Embed a two-quartet logical state into the layout the method needs.

    Args:
        logical: 8-mode input (tableau or dense)
        a8: ancilla |a8> for via_a8; the ideal one by default
    """
    state = logical
    if method in ("via_O2", "via_a8"):
        pair = StabilizerTableau.vacuum(1)
        state = state.tensor(pair if isinstance(logical, StabilizerTableau) else DenseState.from_tableau(pair))
    if method == "via_a8":
        if a8 is None:
            engine = "tableau" if isinstance(logical, StabilizerTableau) else "dense"
            a8 = as_engine(a8_state_tableau(0), engine)
        state = state.tensor(a8)
    return state


def controlled_Z(logical, method: str = "via_O3", a8=None,
                 rng: Optional[np.random.Generator] = None,
                 forced: Optional[Sequence[int]] = None) -> ProtocolResult:
    """Run the controlled-Z and return the logical 8-mode output"""
    circuit = controlled_z_circuit(method)
    run = run_circuit(circuit, controlled_z_input(logical, method, a8), rng, forced)
    output = leading_block(run.state, LOGICAL_MODES) if run.probability > 0 else None
    return ProtocolResult(f"CZ[{method}]", run.record.bits, run.probability, output,
                          {"full_state": run.state})


def controlled_z_branches(logical, method: str = "via_O3", a8=None) -> List[CircuitRun]:
    return enumerate_branches(controlled_z_circuit(method), controlled_z_input(logical, method, a8))

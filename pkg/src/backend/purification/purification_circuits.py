"""
Purification Circuits - |a8> code states, whirling, cyclic shift and the
elementary purification round on the stabilizer engine
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..majorana.braid_circuit import (
    Braid,
    BraidCircuit,
    compile_signed_permutation,
    enumerate_branches,
    run_circuit,
)
from ..majorana.stabilizer_tableau import StabilizerTableau
from .syndrome_distribution import N_SYNDROMES, WHIRL_PERMUTATION, syndrome_bits

logger = logging.getLogger(__name__)

A8_MODES = 8

# S_j = -c_a c_b c_c c_d on these quartets; Q = c_1 ... c_8
STABILIZER_MODES = {
    1: (1, 2, 5, 6),
    2: (2, 3, 6, 7),
    3: (1, 2, 3, 4),
}
PARITY_MODES = tuple(range(1, A8_MODES + 1))

# Double exchanges that flip exactly one syndrome bit
SYNDROME_FLIPS = {
    1: (2, 3),
    2: (1, 2),
    3: (3, 7),
}

# Double-exchange words proportional to each stabilizer
STABILIZER_WORDS = {
    1: ((1, 2), (5, 6)),
    2: ((2, 3), (6, 7)),
    3: ((1, 2), (3, 4)),
}

# c_i -> sign * c_|t| realised by the cyclic shift C
CYCLIC_SHIFT_IMAGES = {1: 6, 2: 2, 3: 1, 4: 5, 5: -7, 6: 3, 7: -4, 8: 8}

# Reshuffle braid of the elementary round: pairs (4+j, 8+j) become the
# measured pairs T_j on (7+2j, 8+2j); modes 13..16 carry the output quartet
ROUND_IMAGES = {
    5: 9, 9: 10,
    6: 11, 10: 12,
    7: 13, 11: 14,
    8: 15, 12: 16,
    13: 5, 14: 6, 15: 7, 16: 8,
}
ROUND_MEASURED_PAIRS = ((9, 10), (11, 12), (13, 14), (15, 16))
ROUND_CORRECTIONS = (
    ("t1^t2^1", (2, 3)),
    ("t2^t3^1", (1, 2)),
)


def _shift(modes, offset: int) -> Tuple[int, ...]:
    return tuple(p + offset for p in modes)


def a8_state_tableau(syndrome: int = 0) -> StabilizerTableau:
    """|Psi_s> on 8 modes: S_j eigenvalue (-1)^{s_j}, parity Q = +1"""
    bits = syndrome_bits(syndrome)
    entries = [(-1 if bit == 0 else 1, STABILIZER_MODES[j]) for j, bit in zip((1, 2, 3), bits)]
    entries.append((1, PARITY_MODES))
    return StabilizerTableau.from_monomials(A8_MODES, entries)


def read_syndrome(state: StabilizerTableau, offset: int = 0) -> int:
    """
    Syndrome s of an 8-mode block starting after mode offset.

    Raises:
        ValueError: if the block is not a syndrome eigenstate
    """
    s = 0
    for j in (1, 2, 3):
        value = state.monomial_expectation(_shift(STABILIZER_MODES[j], offset), sign=-1)
        if value == 0:
            raise ValueError(f"S{j} is not determined on modes {offset + 1}..{offset + 8}")
        s = 2 * s + (0 if value == 1 else 1)
    return s


def syndrome_fix_circuit(syndrome: int) -> BraidCircuit:
    """Double exchanges returning |Psi_s> to |Psi_0>"""
    circuit = BraidCircuit(A8_MODES)
    for j, bit in zip((1, 2, 3), syndrome_bits(syndrome)):
        if bit:
            circuit.double_braid(*SYNDROME_FLIPS[j])
    return circuit


def stabilizer_circuit(j: int) -> BraidCircuit:
    """Braid word proportional to S_j, built from double exchanges"""
    circuit = BraidCircuit(A8_MODES)
    for p, q in STABILIZER_WORDS[j]:
        circuit.double_braid(p, q)
    return circuit


def dephasing_circuits() -> List[BraidCircuit]:
    """One braid word per element of the stabilizer group <S1, S2, S3>"""
    circuits = []
    for mask in range(N_SYNDROMES):
        circuit = BraidCircuit(A8_MODES)
        for j, bit in zip((1, 2, 3), syndrome_bits(mask)):
            if bit:
                circuit = circuit.concat(stabilizer_circuit(j))
        circuits.append(circuit)
    return circuits


def whirl_steps() -> Dict[str, BraidCircuit]:
    """The three XOR steps U12, U23, U31 in time order"""
    return {
        "U12": BraidCircuit(A8_MODES).braid_inverse(6, 7).braid(2, 3),
        "U23": BraidCircuit(A8_MODES).braid(3, 4).braid_inverse(1, 2),
        "U31": BraidCircuit(A8_MODES).braid(2, 6).braid(1, 5),
    }


def whirl_circuit() -> BraidCircuit:
    """U = U31 U23 U12, realising the 7-cycle s -> eta(s)"""
    steps = whirl_steps()
    return steps["U12"].concat(steps["U23"]).concat(steps["U31"])


def whirl_power(k: int) -> Tuple[int, ...]:
    """eta^k as a syndrome permutation"""
    perm = tuple(range(N_SYNDROMES))
    for _ in range(k % 7):
        perm = tuple(WHIRL_PERMUTATION[s] for s in perm)
    return perm


def cyclic_shift_circuit() -> BraidCircuit:
    """C with C S1 C^dagger = S2, C S2 C^dagger = S3, C S3 C^dagger = S1"""
    return compile_signed_permutation(CYCLIC_SHIFT_IMAGES, A8_MODES)


def elementary_round_circuit() -> BraidCircuit:
    """
    16-mode elementary round: reshuffle braid, four pair measurements T_j,
    then outcome-controlled double exchanges on the output block (modes 1..8).
    """
    circuit = compile_signed_permutation(ROUND_IMAGES, 2 * A8_MODES)
    for p, q in ROUND_MEASURED_PAIRS:
        circuit.measure_pair(p, q)
    for condition, (p, q) in ROUND_CORRECTIONS:
        circuit.controlled(condition, Braid(p, q))
        circuit.controlled(condition, Braid(p, q))
    return circuit


@dataclass
class RoundOutcome:
    """Result of one elementary round"""
    accepted: bool
    bits: Tuple[int, ...]
    probability: float
    state: Optional[StabilizerTableau] = None

    @property
    def syndrome(self) -> Optional[int]:
        return None if self.state is None else read_syndrome(self.state)


def _finish(bits, probability, joint_state) -> RoundOutcome:
    accepted = sum(bits) % 2 == 0
    output = joint_state.restrict(A8_MODES) if accepted else None
    return RoundOutcome(accepted, tuple(bits), probability, output)


def elementary_round(first: StabilizerTableau, second: StabilizerTableau,
                     rng: np.random.Generator) -> RoundOutcome:
    """
    Run one elementary round on two 8-mode copies.

    The round accepts iff t1 ^ t2 ^ t3 ^ t4 = 0; on acceptance the output
    copy occupies modes 1..8.
    """
    if first.n_modes != A8_MODES or second.n_modes != A8_MODES:
        raise ValueError("Elementary round needs two 8-mode states")
    run = run_circuit(elementary_round_circuit(), first.tensor(second), rng)
    outcome = _finish(run.record.bits, run.probability, run.state)
    logger.debug(f"Elementary round outcomes {outcome.bits}, accepted={outcome.accepted}")
    return outcome


def elementary_round_branches(first: StabilizerTableau,
                              second: StabilizerTableau) -> List[RoundOutcome]:
    """Every measurement branch of the elementary round with its probability"""
    runs = enumerate_branches(elementary_round_circuit(), first.tensor(second))
    return [_finish(run.record.bits, run.probability, run.state) for run in runs]


def round_transition_table() -> np.ndarray:
    """
    Circuit-level acceptance table A[r, s, u]: probability that inputs
    |Psi_r>, |Psi_s> are accepted with output syndrome u.
    """
    table = np.zeros((N_SYNDROMES, N_SYNDROMES, N_SYNDROMES))
    for r in range(N_SYNDROMES):
        for s in range(N_SYNDROMES):
            for outcome in elementary_round_branches(a8_state_tableau(r), a8_state_tableau(s)):
                if outcome.accepted:
                    table[r, s, outcome.syndrome] += outcome.probability
    return table

"""
Braid Circuits - instructions, classical control, execution and branch enumeration
"""
import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .pauli_string import (
    PauliString,
    jordan_wigner,
    monomial,
    monomial_label,
    quarter_turn_conjugate,
)

logger = logging.getLogger(__name__)


class InstructionType(Enum):
    """Enumeration of circuit instruction types"""
    BRAID = "braid"
    BRAID_INVERSE = "braid_inverse"
    MEASURE_PAIR = "measure_pair"
    MEASURE_QUARTET = "measure_quartet"
    EXPONENT = "exponent"
    CONTROLLED = "controlled"


@dataclass(frozen=True)
class Condition:
    """
    XOR of earlier outcome bits plus a constant, e.g. t1^t2^1.

    Measurement indices are 1-based in execution order.
    """
    terms: Tuple[int, ...]
    constant: int = 0

    @classmethod
    def parse(cls, text: str) -> 'Condition':
        terms = []
        constant = 0
        for token in text.replace(' ', '').split('^'):
            if token in ('0', '1'):
                constant ^= int(token)
            elif token.startswith('t') and token[1:].isdigit() and int(token[1:]) >= 1:
                terms.append(int(token[1:]))
            else:
                raise ValueError(f"Invalid condition token {token!r} in {text!r}")
        return cls(tuple(terms), constant)

    def evaluate(self, bits: Sequence[int]) -> bool:
        value = self.constant
        for j in self.terms:
            if j > len(bits):
                raise ValueError(f"Condition refers to t{j} but only {len(bits)} outcomes recorded")
            value ^= bits[j - 1]
        return bool(value)

    def shifted(self, offset: int) -> 'Condition':
        return Condition(tuple(j + offset for j in self.terms), self.constant)

    def __str__(self) -> str:
        parts = [f"t{j}" for j in self.terms]
        if self.constant or not parts:
            parts.append(str(self.constant))
        return '^'.join(parts)


@dataclass(frozen=True)
class Braid:
    p: int
    q: int
    kind = InstructionType.BRAID

    @property
    def modes(self) -> Tuple[int, ...]:
        return (self.p, self.q)

    def to_dict(self):
        return {"op": self.kind.value, "p": self.p, "q": self.q}


@dataclass(frozen=True)
class BraidInverse:
    p: int
    q: int
    kind = InstructionType.BRAID_INVERSE

    @property
    def modes(self) -> Tuple[int, ...]:
        return (self.p, self.q)

    def to_dict(self):
        return {"op": self.kind.value, "p": self.p, "q": self.q}


@dataclass(frozen=True)
class MeasurePair:
    """Fusion measurement of -i c_p c_q"""
    p: int
    q: int
    kind = InstructionType.MEASURE_PAIR

    @property
    def modes(self) -> Tuple[int, ...]:
        return (self.p, self.q)

    def to_dict(self):
        return {"op": self.kind.value, "p": self.p, "q": self.q}


@dataclass(frozen=True)
class MeasureQuartet:
    """Measurement of the Hermitian form of c_p c_q c_r c_s"""
    quartet: Tuple[int, int, int, int]
    kind = InstructionType.MEASURE_QUARTET

    @property
    def modes(self) -> Tuple[int, ...]:
        return tuple(self.quartet)

    def to_dict(self):
        return {"op": self.kind.value, "modes": list(self.quartet)}


@dataclass(frozen=True)
class Exponent:
    """Clifford exponent exp(-quarter_turns * pi/4 * M), M the anti-Hermitian monomial"""
    monomial_modes: Tuple[int, ...]
    quarter_turns: int = 1
    kind = InstructionType.EXPONENT

    @property
    def modes(self) -> Tuple[int, ...]:
        return tuple(self.monomial_modes)

    def to_dict(self):
        return {"op": self.kind.value, "modes": list(self.monomial_modes),
                "quarter_turns": self.quarter_turns}


@dataclass(frozen=True)
class ClassicallyControlled:
    condition: Condition
    instruction: Union[Braid, BraidInverse, Exponent]
    kind = InstructionType.CONTROLLED

    @property
    def modes(self) -> Tuple[int, ...]:
        return self.instruction.modes

    def to_dict(self):
        if isinstance(self.instruction, Braid):
            return {"op": "cbraid", "cond": str(self.condition),
                    "p": self.instruction.p, "q": self.instruction.q}
        return {"op": self.kind.value, "cond": str(self.condition),
                "instruction": self.instruction.to_dict()}


Instruction = Union[Braid, BraidInverse, MeasurePair, MeasureQuartet, Exponent, ClassicallyControlled]
MEASUREMENTS = (MeasurePair, MeasureQuartet)
UNITARIES = (Braid, BraidInverse, Exponent)


def instruction_from_dict(data: Dict) -> Instruction:
    """Parse one instruction of the JSON circuit format"""
    op = data.get("op")
    if op == "braid":
        return Braid(int(data["p"]), int(data["q"]))
    if op == "braid_inverse":
        return BraidInverse(int(data["p"]), int(data["q"]))
    if op == "measure_pair":
        return MeasurePair(int(data["p"]), int(data["q"]))
    if op == "measure_quartet":
        modes = tuple(int(p) for p in data["modes"])
        if len(modes) != 4:
            raise ValueError(f"measure_quartet needs four modes, got {modes}")
        return MeasureQuartet(modes)
    if op == "exponent":
        return Exponent(tuple(int(p) for p in data["modes"]), int(data.get("quarter_turns", 1)))
    if op == "cbraid":
        return ClassicallyControlled(Condition.parse(data["cond"]),
                                     Braid(int(data["p"]), int(data["q"])))
    if op == "controlled":
        inner = instruction_from_dict(data["instruction"])
        if not isinstance(inner, UNITARIES):
            raise ValueError(f"Only unitary instructions can be controlled, got {inner}")
        return ClassicallyControlled(Condition.parse(data["cond"]), inner)
    raise ValueError(f"Unknown instruction op {op!r}")


def _relabel(instruction: Instruction, mapping: Dict[int, int]) -> Instruction:
    def m(p):
        return mapping.get(p, p)
    if isinstance(instruction, (Braid, BraidInverse, MeasurePair)):
        return type(instruction)(m(instruction.p), m(instruction.q))
    if isinstance(instruction, MeasureQuartet):
        return MeasureQuartet(tuple(m(p) for p in instruction.quartet))
    if isinstance(instruction, Exponent):
        return Exponent(tuple(m(p) for p in instruction.monomial_modes), instruction.quarter_turns)
    return ClassicallyControlled(instruction.condition, _relabel(instruction.instruction, mapping))


def _invert(instruction: Instruction) -> Instruction:
    if isinstance(instruction, Braid):
        return BraidInverse(instruction.p, instruction.q)
    if isinstance(instruction, BraidInverse):
        return Braid(instruction.p, instruction.q)
    if isinstance(instruction, Exponent):
        return Exponent(instruction.monomial_modes, -instruction.quarter_turns)
    raise ValueError(f"Instruction {instruction} has no inverse")


class BraidCircuit:
    """Ordered list of instructions acting on n_modes Majorana modes"""

    def __init__(self, n_modes: int, instructions: Optional[Sequence[Instruction]] = None):
        if n_modes <= 0 or n_modes % 2:
            raise ValueError(f"Mode count must be a positive even number, got {n_modes}")
        self.n_modes = n_modes
        self.instructions: List[Instruction] = []
        for instruction in instructions or []:
            self.append(instruction)

    def append(self, instruction: Instruction) -> 'BraidCircuit':
        modes = instruction.modes
        if len(set(modes)) != len(modes):
            raise ValueError(f"Duplicate mode index in {instruction}")
        for p in modes:
            if not 1 <= p <= self.n_modes:
                raise ValueError(f"Mode index {p} out of range for {self.n_modes} modes")
        if isinstance(instruction, ClassicallyControlled):
            known = self.n_measurements
            if any(j > known for j in instruction.condition.terms):
                raise ValueError(
                    f"Condition {instruction.condition} refers to a later measurement "
                    f"(only {known} so far)")
        self.instructions.append(instruction)
        return self

    def braid(self, p: int, q: int) -> 'BraidCircuit':
        return self.append(Braid(p, q))

    def braid_inverse(self, p: int, q: int) -> 'BraidCircuit':
        return self.append(BraidInverse(p, q))

    def double_braid(self, p: int, q: int) -> 'BraidCircuit':
        """B_{p,q}^2, proportional to c_p c_q"""
        return self.append(Braid(p, q)).append(Braid(p, q))

    def measure_pair(self, p: int, q: int) -> 'BraidCircuit':
        return self.append(MeasurePair(p, q))

    def measure_quartet(self, p: int, q: int, r: int, s: int) -> 'BraidCircuit':
        return self.append(MeasureQuartet((p, q, r, s)))

    def exponent(self, modes: Sequence[int], quarter_turns: int = 1) -> 'BraidCircuit':
        return self.append(Exponent(tuple(modes), quarter_turns))

    def controlled(self, condition: Union[str, Condition], instruction: Instruction) -> 'BraidCircuit':
        if isinstance(condition, str):
            condition = Condition.parse(condition)
        if not isinstance(instruction, UNITARIES):
            raise ValueError(f"Only unitary instructions can be controlled, got {instruction}")
        return self.append(ClassicallyControlled(condition, instruction))

    @property
    def n_measurements(self) -> int:
        return sum(isinstance(i, MEASUREMENTS) for i in self.instructions)

    def is_unitary(self) -> bool:
        return all(isinstance(i, UNITARIES) for i in self.instructions)

    def concat(self, other: 'BraidCircuit') -> 'BraidCircuit':
        """This circuit followed by other; other's conditions are re-indexed"""
        n_modes = max(self.n_modes, other.n_modes)
        offset = self.n_measurements
        result = BraidCircuit(n_modes, self.instructions)
        for instruction in other.instructions:
            if isinstance(instruction, ClassicallyControlled):
                instruction = ClassicallyControlled(instruction.condition.shifted(offset),
                                                    instruction.instruction)
            result.append(instruction)
        return result

    def repeated(self, times: int) -> 'BraidCircuit':
        if not self.is_unitary():
            raise ValueError("Only unitary circuits can be repeated")
        return BraidCircuit(self.n_modes, list(self.instructions) * times)

    def inverse(self) -> 'BraidCircuit':
        return BraidCircuit(self.n_modes, [_invert(i) for i in reversed(self.instructions)])

    def relabel(self, mapping: Dict[int, int], n_modes: Optional[int] = None) -> 'BraidCircuit':
        """Rename modes via mapping (unmapped modes keep their label)"""
        return BraidCircuit(n_modes or self.n_modes,
                            [_relabel(i, mapping) for i in self.instructions])

    def conjugate(self, operator: PauliString) -> PauliString:
        """U P U^dagger for a unitary circuit U"""
        if not self.is_unitary():
            raise ValueError("Conjugation needs a unitary circuit")
        n = self.n_modes // 2
        for instruction in self.instructions:
            if isinstance(instruction, Exponent):
                gen = monomial(instruction.monomial_modes, n).anti_hermitian_form()
                operator = quarter_turn_conjugate(operator, gen, instruction.quarter_turns)
            else:
                gen = monomial(instruction.modes, n)
                turns = 1 if isinstance(instruction, Braid) else 3
                operator = quarter_turn_conjugate(operator, gen, turns)
        return operator

    def signed_image(self, p: int) -> int:
        """Signed target mode t such that U c_p U^dagger = sign(t) c_|t|"""
        n = self.n_modes // 2
        image = self.conjugate(jordan_wigner(p, n))
        for t in range(1, self.n_modes + 1):
            c_t = jordan_wigner(t, n)
            if image == c_t:
                return t
            if image == -c_t:
                return -t
        raise ValueError(f"Image of c{p} is not a single Majorana operator: {image}")

    def __len__(self) -> int:
        return len(self.instructions)

    def __iter__(self) -> Iterator[Instruction]:
        return iter(self.instructions)

    def to_dict(self):
        return {
            "n_modes": self.n_modes,
            "ops": [i.to_dict() for i in self.instructions],
        }

    @classmethod
    def from_dict(cls, data: Dict) -> 'BraidCircuit':
        if "n_modes" not in data or "ops" not in data:
            raise ValueError("Circuit JSON needs 'n_modes' and 'ops'")
        return cls(int(data["n_modes"]), [instruction_from_dict(op) for op in data["ops"]])

    def save(self, path: Union[str, Path]) -> None:
        with open(path, 'w') as f:
            json.dump(self.to_dict(), f, indent=2)

    @classmethod
    def load(cls, path: Union[str, Path]) -> 'BraidCircuit':
        with open(path, 'r') as f:
            return cls.from_dict(json.load(f))


@dataclass
class OutcomeRecord:
    """Measurement outcomes t_j, eigenvalue (-1)^{t_j}, in execution order"""
    bits: List[int] = field(default_factory=list)
    observables: List[str] = field(default_factory=list)

    def append(self, bit: int, observable: str) -> None:
        self.bits.append(int(bit))
        self.observables.append(observable)

    def t(self, j: int) -> int:
        return self.bits[j - 1]

    def parity(self) -> int:
        return int(sum(self.bits) % 2)

    def __len__(self) -> int:
        return len(self.bits)

    def to_log_lines(self) -> List[str]:
        return [f"{j},{obs},{bit}" for j, (obs, bit) in
                enumerate(zip(self.observables, self.bits), start=1)]

    def to_dict(self):
        return {"bits": list(self.bits), "observables": list(self.observables)}


@dataclass
class CircuitRun:
    """Outcome of one execution: record, final state and branch probability"""
    record: OutcomeRecord
    state: object
    probability: float


def _observable_label(instruction: Instruction) -> str:
    if isinstance(instruction, MeasurePair):
        return f"F({instruction.p},{instruction.q})"
    return monomial_label(instruction.modes)


def _apply_unitary(state, instruction: Instruction):
    if isinstance(instruction, Braid):
        return state.braid(instruction.p, instruction.q)
    if isinstance(instruction, BraidInverse):
        return state.braid(instruction.p, instruction.q, inverse=True)
    return state.exponent(instruction.monomial_modes, instruction.quarter_turns)


def run_circuit(circuit: BraidCircuit, state, rng: Optional[np.random.Generator] = None,
                forced: Optional[Sequence[int]] = None,
                check_invariants: bool = False) -> CircuitRun:
    """
    Execute a circuit on any engine exposing braid/exponent/measure.

    Args:
        circuit: Circuit to run
        state: StabilizerTableau or DenseState
        rng: Generator used for undetermined outcomes
        forced: Outcome bits to post-select instead of sampling
        check_invariants: Validate the state after every instruction

    Returns:
        CircuitRun with the probability of the realised branch
    """
    if state.n_modes != circuit.n_modes:
        raise ValueError(f"Circuit on {circuit.n_modes} modes applied to a {state.n_modes}-mode state")
    record = OutcomeRecord()
    probability = 1.0
    for instruction in circuit:
        if isinstance(instruction, ClassicallyControlled):
            if instruction.condition.evaluate(record.bits):
                state = _apply_unitary(state, instruction.instruction)
        elif isinstance(instruction, MEASUREMENTS):
            index = len(record)
            force = None if forced is None or index >= len(forced) else forced[index]
            bit, prob, state = state.measure(instruction.modes, rng, force)
            probability *= prob
            record.append(bit, _observable_label(instruction))
            if prob == 0.0:
                logger.debug(f"Branch {record.bits} has zero probability")
                return CircuitRun(record, state, 0.0)
        else:
            state = _apply_unitary(state, instruction)
        if check_invariants:
            state.validate()
    return CircuitRun(record, state, probability)


def enumerate_branches(circuit: BraidCircuit, state, tolerance: float = 1e-12) -> List[CircuitRun]:
    """
    Explore every measurement branch with non-negligible probability.

    Returns:
        One CircuitRun per surviving branch; probabilities sum to one
    """
    if state.n_modes != circuit.n_modes:
        raise ValueError(f"Circuit on {circuit.n_modes} modes applied to a {state.n_modes}-mode state")
    runs: List[CircuitRun] = []
    stack = [(0, state, OutcomeRecord(), 1.0)]
    while stack:
        start, current, record, probability = stack.pop()
        for index in range(start, len(circuit.instructions)):
            instruction = circuit.instructions[index]
            if isinstance(instruction, MEASUREMENTS):
                for bit in (1, 0):
                    _, prob, branch = current.measure(instruction.modes, None, bit)
                    if probability * prob > tolerance:
                        child = OutcomeRecord(record.bits + [bit],
                                              record.observables + [_observable_label(instruction)])
                        stack.append((index + 1, branch, child, probability * prob))
                break
            if isinstance(instruction, ClassicallyControlled):
                if instruction.condition.evaluate(record.bits):
                    current = _apply_unitary(current, instruction.instruction)
            else:
                current = _apply_unitary(current, instruction)
        else:
            runs.append(CircuitRun(record, current, probability))
    runs.sort(key=lambda r: r.record.bits)
    return runs


def braid_word_nonlocal(p: int, q: int, n_modes: Optional[int] = None) -> BraidCircuit:
    """
    Nearest-neighbour decomposition B_{q-1}...B_{p+1} B_p B_{p+1}^dagger...B_{q-1}^dagger
    of B_{p,q}, listed in time order.
    """
    if p > q:
        raise ValueError(f"Nonlocal braid requires p <= q, got ({p}, {q})")
    n_modes = n_modes or q + (q % 2)
    circuit = BraidCircuit(n_modes)
    if p == q:
        return circuit
    for j in range(q - 1, p, -1):
        circuit.braid_inverse(j, j + 1)
    circuit.braid(p, p + 1)
    for j in range(p + 1, q):
        circuit.braid(j, j + 1)
    return circuit


def compile_signed_permutation(images: Dict[int, int], n_modes: Optional[int] = None) -> BraidCircuit:
    """
    Braid word U with U c_i U^dagger = sign(images[i]) c_|images[i]|.

    Modes not listed are fixed. The sign pattern must be reachable by braids,
    i.e. the number of sign flips relative to the greedy word must be even.
    """
    n_modes = n_modes or max(max(abs(t) for t in images.values()), max(images))
    n_modes += n_modes % 2
    full = {i: images.get(i, i) for i in range(1, n_modes + 1)}
    targets = sorted(abs(t) for t in full.values())
    if targets != list(range(1, n_modes + 1)):
        raise ValueError(f"Images {images} do not form a signed permutation of 1..{n_modes}")

    circuit = BraidCircuit(n_modes)
    position = {i: i for i in full}
    sign = {i: 1 for i in full}
    occupant = {i: i for i in full}
    for i in range(1, n_modes + 1):
        j, t = position[i], abs(full[i])
        if j == t:
            continue
        # Both forms send c_j -> c_t and c_t -> -c_j
        if j < t:
            circuit.braid(j, t)
        else:
            circuit.braid_inverse(t, j)
        k = occupant[t]
        position[i], occupant[t] = t, i
        position[k], occupant[j] = j, k
        sign[k] = -sign[k]

    flipped = [abs(full[i]) for i in range(1, n_modes + 1) if sign[i] != (1 if full[i] > 0 else -1)]
    if len(flipped) % 2:
        raise ValueError(f"Signed permutation {images} changes fermion parity; not a braid")
    for a, b in zip(flipped[::2], flipped[1::2]):
        circuit.double_braid(min(a, b), max(a, b))
    logger.debug(f"Compiled signed permutation into {len(circuit)} braids")
    return circuit

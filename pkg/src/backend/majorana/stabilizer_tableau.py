"""
Stabilizer Tableau for Majorana Modes

Pure stabilizer states of 2n Majorana modes (n qubits under Jordan-Wigner),
stored as n commuting Hermitian Pauli generators. Braid gates and quartic
Clifford exponents act by conjugation; fusion and quartet measurements use
the standard anticommuting-generator update.
"""

import logging
from typing import Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from .pauli_string import (
    PauliString,
    hermitian_monomial,
    modes_to_qubits,
    monomial,
)

logger = logging.getLogger(__name__)


def _multiply_rows(x1, z1, ph1, x2, z2, ph2):
    """Row-wise product of Pauli rows (left operand first)"""
    swap = (z1.astype(np.int64) * x2).sum(axis=-1) & 1
    return x1 ^ x2, z1 ^ z2, (ph1 + ph2 + 2 * swap) % 4


def _rref(x: np.ndarray, z: np.ndarray, phase: np.ndarray,
          column_order: Optional[np.ndarray] = None):
    """
    Row-reduce a set of commuting Pauli rows over GF(2), multiplying the
    Pauli operators themselves so that phases stay exact.

    Returns:
        (x, z, phase, pivots) with rows sorted by pivot position
    """
    x = x.copy()
    z = z.copy()
    phase = phase.copy() % 4
    n = x.shape[1]
    bits = np.concatenate([x, z], axis=1)
    if column_order is None:
        column_order = np.arange(2 * n)
    pivots = []
    row = 0
    for col in column_order:
        if row >= len(bits):
            break
        candidates = np.nonzero(bits[row:, col])[0]
        if candidates.size == 0:
            continue
        pick = row + candidates[0]
        if pick != row:
            for arr in (x, z, phase, bits):
                arr[[row, pick]] = arr[[pick, row]]
        for other in np.nonzero(bits[:, col])[0]:
            if other == row:
                continue
            x[other], z[other], phase[other] = _multiply_rows(
                x[other], z[other], phase[other], x[row], z[row], phase[row])
            bits[other] = np.concatenate([x[other], z[other]])
        pivots.append(int(col))
        row += 1
    return x, z, phase, pivots


class StabilizerTableau:
    """
    Stabilizer state of n_modes Majorana modes.

    Every public operation returns a new tableau; instances are never
    mutated after construction.
    """

    def __init__(self, n_modes: int, x: np.ndarray, z: np.ndarray, phase: np.ndarray):
        self.n_modes = int(n_modes)
        self.n_qubits = modes_to_qubits(n_modes)
        self.x = np.asarray(x, dtype=np.uint8)
        self.z = np.asarray(z, dtype=np.uint8)
        self.phase = np.asarray(phase, dtype=np.int64) % 4
        if self.x.shape != (self.n_qubits, self.n_qubits) or self.z.shape != self.x.shape:
            raise ValueError(
                f"Tableau for {n_modes} modes needs {self.n_qubits} generators "
                f"on {self.n_qubits} qubits, got shape {self.x.shape}")

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def from_generators(cls, n_modes: int, generators: Sequence[PauliString]) -> 'StabilizerTableau':
        n = modes_to_qubits(n_modes)
        if len(generators) != n:
            raise ValueError(f"Expected {n} generators, got {len(generators)}")
        x = np.array([g.x_bits for g in generators], dtype=np.uint8).reshape(n, n)
        z = np.array([g.z_bits for g in generators], dtype=np.uint8).reshape(n, n)
        phase = np.array([g.phase_power for g in generators], dtype=np.int64)
        tableau = cls(n_modes, x, z, phase)
        tableau.validate()
        return tableau

    @classmethod
    def from_monomials(cls, n_modes: int,
                       entries: Iterable[Tuple[int, Sequence[int]]]) -> 'StabilizerTableau':
        """
        Build a tableau from (sign, modes) pairs, each generator being
        sign times the Hermitian form of the Majorana monomial.
        """
        n = modes_to_qubits(n_modes)
        generators = []
        for sign, modes in entries:
            if sign not in (1, -1):
                raise ValueError(f"Generator sign must be +1 or -1, got {sign}")
            gen = hermitian_monomial(modes, n)
            generators.append(gen if sign == 1 else -gen)
        return cls.from_generators(n_modes, generators)

    @classmethod
    def vacuum(cls, n_pairs: int) -> 'StabilizerTableau':
        if n_pairs < 1:
            raise ValueError(f"Need at least one pair, got {n_pairs}")
        entries = [(1, (2 * j - 1, 2 * j)) for j in range(1, n_pairs + 1)]
        return cls.from_monomials(2 * n_pairs, entries)

    @classmethod
    def paired_state(cls, n_modes: int,
                     pairs: Iterable[Tuple[int, int, int]]) -> 'StabilizerTableau':
        """Paired state stabilized by sign * (-i c_a c_b) for each (sign, a, b)"""
        return cls.from_monomials(n_modes, [(sign, (a, b)) for sign, a, b in pairs])

    def copy(self) -> 'StabilizerTableau':
        return StabilizerTableau(self.n_modes, self.x.copy(), self.z.copy(), self.phase.copy())

    @property
    def generators(self) -> List[PauliString]:
        return [PauliString(self.n_qubits, self.phase[i], self.x[i], self.z[i])
                for i in range(self.n_qubits)]

    # ------------------------------------------------------------------
    # Invariants and canonical form
    # ------------------------------------------------------------------

    def validate(self) -> None:
        """Raise RuntimeError unless generators commute, are independent and Hermitian"""
        xi = self.x.astype(np.int64)
        zi = self.z.astype(np.int64)
        form = (xi @ zi.T + zi @ xi.T) % 2
        if form.any():
            raise RuntimeError("Stabilizer generators do not commute")
        _, _, _, pivots = _rref(self.x, self.z, self.phase)
        if len(pivots) != self.n_qubits:
            raise RuntimeError(f"Generators are dependent: rank {len(pivots)} < {self.n_qubits}")
        for g in self.generators:
            if not g.is_hermitian():
                raise RuntimeError(f"Generator {g} is not Hermitian")

    def canonical_form(self) -> 'StabilizerTableau':
        x, z, phase, _ = _rref(self.x, self.z, self.phase)
        return StabilizerTableau(self.n_modes, x, z, phase)

    def canonical_key(self) -> bytes:
        """Byte key identifying the state (equal keys iff equal stabilizer groups)"""
        canon = self.canonical_form()
        return (bytes([self.n_modes]) + canon.x.tobytes() + canon.z.tobytes()
                + canon.phase.astype(np.uint8).tobytes())

    def __eq__(self, other) -> bool:
        if not isinstance(other, StabilizerTableau):
            return NotImplemented
        return self.canonical_key() == other.canonical_key()

    def __hash__(self) -> int:
        return hash(self.canonical_key())

    def _anticommuting_rows(self, observable: PauliString) -> np.ndarray:
        form = (self.z.astype(np.int64) @ observable.x_bits
                + self.x.astype(np.int64) @ observable.z_bits) % 2
        return np.nonzero(form)[0]

    def _reduce(self, observable: PauliString) -> Optional[PauliString]:
        """Group element with the same support as the observable, or None"""
        x, z, phase, pivots = _rref(self.x, self.z, self.phase)
        residual = observable.symplectic().copy()
        product = PauliString.identity(self.n_qubits)
        for row, col in enumerate(pivots):
            if residual[col]:
                residual ^= np.concatenate([x[row], z[row]])
                product = product * PauliString(self.n_qubits, phase[row], x[row], z[row])
        if residual.any():
            return None
        return product

    def expectation(self, observable: PauliString) -> int:
        """+1 or -1 if the Hermitian observable (or its negative) stabilizes the state, else 0"""
        if len(self._anticommuting_rows(observable)):
            return 0
        element = self._reduce(observable)
        if element is None:
            return 0
        diff = (observable.phase_power - element.phase_power) % 4
        if diff % 2:
            raise ValueError(f"Observable {observable} is not Hermitian")
        return 1 if diff == 0 else -1

    def monomial_expectation(self, modes: Sequence[int], sign: int = 1) -> int:
        return sign * self.expectation(hermitian_monomial(modes, self.n_qubits))

    def parity(self) -> int:
        return self.expectation(parity_operator(self.n_modes))

    def is_paired(self) -> bool:
        """True if the group is generated by n pair operators -i c_a c_b on a perfect matching"""
        graph = nx.Graph()
        graph.add_nodes_from(range(1, self.n_modes + 1))
        for a in range(1, self.n_modes + 1):
            for b in range(a + 1, self.n_modes + 1):
                if self.monomial_expectation((a, b)) != 0:
                    graph.add_edge(a, b)
        if any(degree != 1 for _, degree in graph.degree()):
            return False
        return nx.is_perfect_matching(graph, set(graph.edges()))

    # ------------------------------------------------------------------
    # Unitary evolution
    # ------------------------------------------------------------------

    def _quarter_turn(self, generator: PauliString, turns: int) -> 'StabilizerTableau':
        """
        Conjugate by exp(-turns * pi/4 * M) for an anti-Hermitian monomial M.

        Rows g anticommuting with M map to -M g per quarter turn.
        """
        if generator.square_sign() != -1:
            raise ValueError(f"Exponent generator {generator} must square to -I")
        x, z, phase = self.x.copy(), self.z.copy(), self.phase.copy()
        minus_m = -generator
        for _ in range(turns % 4):
            rows = (z.astype(np.int64) @ generator.x_bits
                    + x.astype(np.int64) @ generator.z_bits) % 2
            idx = np.nonzero(rows)[0]
            if idx.size == 0:
                break
            mx = np.broadcast_to(minus_m.x_bits, (idx.size, self.n_qubits))
            mz = np.broadcast_to(minus_m.z_bits, (idx.size, self.n_qubits))
            x[idx], z[idx], phase[idx] = _multiply_rows(
                mx, mz, minus_m.phase_power, x[idx], z[idx], phase[idx])
        return StabilizerTableau(self.n_modes, x, z, phase)

    def braid(self, p: int, q: int, inverse: bool = False) -> 'StabilizerTableau':
        """Conjugate by B_{p,q} = exp(-pi/4 c_p c_q), or by its inverse"""
        self._check_modes((p, q))
        gen = monomial((p, q), self.n_qubits)
        return self._quarter_turn(gen, 3 if inverse else 1)

    def exponent(self, modes: Sequence[int], quarter_turns: int) -> 'StabilizerTableau':
        """
        Conjugate by exp(-quarter_turns * pi/4 * M) with M the anti-Hermitian
        form of the even Majorana monomial on the given modes.
        """
        self._check_modes(modes)
        if len(modes) % 2:
            raise ValueError(f"Exponent monomial must be even, got modes {tuple(modes)}")
        gen = monomial(modes, self.n_qubits).anti_hermitian_form()
        return self._quarter_turn(gen, int(quarter_turns))

    # ------------------------------------------------------------------
    # Measurement
    # ------------------------------------------------------------------

    def measure(self, modes: Sequence[int], rng: Optional[np.random.Generator] = None,
                forced: Optional[int] = None) -> Tuple[int, float, 'StabilizerTableau']:
        """
        Projective measurement of the Hermitian form of a Majorana monomial.

        Args:
            modes: Mode indices of the monomial
            rng: Random generator for undetermined outcomes
            forced: Outcome to post-select instead of sampling

        Returns:
            (outcome bit, probability of that outcome, post-measurement tableau)
        """
        self._check_modes(modes)
        observable = hermitian_monomial(modes, self.n_qubits)
        anti = self._anticommuting_rows(observable)
        if anti.size == 0:
            value = self.expectation(observable)
            bit = 0 if value == 1 else 1
            if forced is not None and forced != bit:
                return int(forced), 0.0, self.copy()
            return bit, 1.0, self.copy()

        if forced is not None:
            bit = int(forced)
        elif rng is not None:
            bit = int(rng.integers(2))
        else:
            raise ValueError("Random measurement outcome requires an rng or a forced outcome")

        x, z, phase = self.x.copy(), self.z.copy(), self.phase.copy()
        first = anti[0]
        for other in anti[1:]:
            x[other], z[other], phase[other] = _multiply_rows(
                x[other], z[other], phase[other], x[first], z[first], phase[first])
        x[first] = observable.x_bits
        z[first] = observable.z_bits
        phase[first] = (observable.phase_power + 2 * bit) % 4
        logger.debug(f"Measured {tuple(modes)} -> {bit} (random)")
        return bit, 0.5, StabilizerTableau(self.n_modes, x, z, phase)

    # ------------------------------------------------------------------
    # Composition
    # ------------------------------------------------------------------

    def tensor(self, other: 'StabilizerTableau') -> 'StabilizerTableau':
        """Juxtapose two states; the other state's modes are shifted past this one's"""
        n1, n2 = self.n_qubits, other.n_qubits
        x = np.zeros((n1 + n2, n1 + n2), dtype=np.uint8)
        z = np.zeros_like(x)
        x[:n1, :n1], z[:n1, :n1] = self.x, self.z
        x[n1:, n1:], z[n1:, n1:] = other.x, other.z
        phase = np.concatenate([self.phase, other.phase])
        return StabilizerTableau(self.n_modes + other.n_modes, x, z, phase)

    def restrict(self, n_keep_modes: int) -> 'StabilizerTableau':
        """
        State of the first n_keep_modes modes, which must be unentangled
        with the remaining ones.
        """
        m = modes_to_qubits(n_keep_modes)
        n = self.n_qubits
        if m > n:
            raise ValueError(f"Cannot keep {n_keep_modes} of {self.n_modes} modes")
        dropped = list(range(m, n)) + list(range(n + m, 2 * n))
        kept = list(range(m)) + list(range(n, n + m))
        x, z, phase, pivots = _rref(self.x, self.z, self.phase, np.array(dropped + kept))
        local = [row for row, col in enumerate(pivots) if col in kept]
        if len(local) != m:
            raise ValueError(
                f"Modes 1..{n_keep_modes} are entangled with the rest "
                f"({len(local)} local generators, need {m})")
        return StabilizerTableau(n_keep_modes, x[local][:, :m], z[local][:, :m], phase[local])

    def _check_modes(self, modes: Sequence[int]) -> None:
        modes = tuple(int(p) for p in modes)
        if len(set(modes)) != len(modes):
            raise ValueError(f"Duplicate mode index in {modes}")
        for p in modes:
            if not 1 <= p <= self.n_modes:
                raise ValueError(f"Mode index {p} out of range for {self.n_modes} modes")

    def __str__(self) -> str:
        return "<" + ", ".join(str(g) for g in self.generators) + ">"

    def __repr__(self) -> str:
        return f"StabilizerTableau(n_modes={self.n_modes}, generators={self})"


def parity_operator(n_modes: int) -> PauliString:
    """Q = (-i)^n c_1 c_2 ... c_{2n}, which equals Z on every qubit"""
    n = modes_to_qubits(n_modes)
    return monomial(range(1, n_modes + 1), n).times_i(3 * n)


def new_vacuum(n_pairs: int) -> StabilizerTableau:
    return StabilizerTableau.vacuum(n_pairs)


def apply_braid(tableau: StabilizerTableau, p: int, q: int) -> StabilizerTableau:
    if p >= q:
        raise ValueError(f"Braid requires p < q, got ({p}, {q})")
    return tableau.braid(p, q)


def measure_pair(tableau: StabilizerTableau, p: int, q: int,
                 rng: np.random.Generator) -> Tuple[int, StabilizerTableau]:
    """Fusion measurement of F_{p,q} = -i c_p c_q"""
    if p >= q:
        raise ValueError(f"Pair measurement requires p < q, got ({p}, {q})")
    bit, _, state = tableau.measure((p, q), rng)
    return bit, state


def measure_quartet(tableau: StabilizerTableau, p: int, q: int, r: int, s: int,
                    rng: np.random.Generator) -> Tuple[int, StabilizerTableau]:
    """Measurement of the Hermitian observable c_p c_q c_r c_s"""
    bit, _, state = tableau.measure((p, q, r, s), rng)
    return bit, state

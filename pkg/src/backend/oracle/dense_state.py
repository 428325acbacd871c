"""
Dense State Vector Oracle

Exact amplitude-vector simulation of braid gates, Majorana exponents and
projective measurements on a few qubits. Slow by construction; every
stabilizer-engine result and every protocol is checked against it.
"""
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg

from ..majorana.pauli_string import PauliString, hermitian_monomial, monomial

logger = logging.getLogger(__name__)

MAX_QUBITS = 14
ZERO_PROBABILITY = 1e-14


class DenseState:
    """
    Pure state of n qubits (2n Majorana modes).

    Qubit 1 is the most significant bit of the amplitude index. A state with
    empty=True stands for a zero-probability projection result.
    """

    def __init__(self, n_qubits: int, amplitudes: np.ndarray, empty: bool = False):
        if n_qubits < 1:
            raise ValueError(f"Need at least one qubit, got {n_qubits}")
        if n_qubits > MAX_QUBITS:
            raise ValueError(f"Dense oracle is capped at {MAX_QUBITS} qubits, got {n_qubits}")
        amplitudes = np.asarray(amplitudes, dtype=complex)
        if amplitudes.shape != (2 ** n_qubits,):
            raise ValueError(f"Expected {2 ** n_qubits} amplitudes, got shape {amplitudes.shape}")
        self.n_qubits = n_qubits
        self.amplitudes = amplitudes
        self.empty = empty

    @property
    def n_modes(self) -> int:
        return 2 * self.n_qubits

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def vacuum(cls, n_qubits: int) -> 'DenseState':
        return cls.basis_state([0] * n_qubits)

    @classmethod
    def basis_state(cls, bits: Sequence[int]) -> 'DenseState':
        n = len(bits)
        index = int(''.join(str(int(b)) for b in bits), 2) if n else 0
        amplitudes = np.zeros(2 ** n, dtype=complex)
        amplitudes[index] = 1.0
        return cls(n, amplitudes)

    @classmethod
    def from_amplitudes(cls, amplitudes: Sequence[complex], normalize: bool = True) -> 'DenseState':
        vec = np.asarray(amplitudes, dtype=complex)
        n = int(round(np.log2(len(vec))))
        if 2 ** n != len(vec):
            raise ValueError(f"Amplitude count {len(vec)} is not a power of two")
        if normalize:
            norm = np.linalg.norm(vec)
            if norm == 0:
                raise ValueError("Cannot normalize the zero vector")
            vec = vec / norm
        return cls(n, vec)

    @classmethod
    def empty_state(cls, n_qubits: int) -> 'DenseState':
        return cls(n_qubits, np.zeros(2 ** n_qubits, dtype=complex), empty=True)

    @classmethod
    def from_tableau(cls, tableau) -> 'DenseState':
        """Amplitude vector of a stabilizer state, by projecting a basis state"""
        n = tableau.n_qubits
        generators = tableau.generators
        for index in range(2 ** n):
            vec = np.zeros(2 ** n, dtype=complex)
            vec[index] = 1.0
            state = cls(n, vec)
            for g in generators:
                state = cls(n, (state.amplitudes + state.apply_pauli(g).amplitudes) / 2)
            norm = np.linalg.norm(state.amplitudes)
            if norm > 1e-6:
                return cls(n, state.amplitudes / norm)
        raise RuntimeError("Stabilizer projector annihilated every basis state")

    def copy(self) -> 'DenseState':
        return DenseState(self.n_qubits, self.amplitudes.copy(), self.empty)

    def tensor(self, other: 'DenseState') -> 'DenseState':
        """This state on the leading qubits, other on the trailing ones"""
        return DenseState(self.n_qubits + other.n_qubits,
                          np.kron(self.amplitudes, other.amplitudes))

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def validate(self, tolerance: float = 1e-12) -> None:
        if self.empty:
            return
        if abs(self.norm() - 1.0) > tolerance:
            raise RuntimeError(f"State norm drifted to {self.norm()!r}")

    # ------------------------------------------------------------------
    # Operators
    # ------------------------------------------------------------------

    def apply_pauli(self, pauli: PauliString) -> 'DenseState':
        """P|psi> using out[b ^ x] = i^k (-1)^{z.b} psi[b]"""
        if pauli.n_qubits != self.n_qubits:
            raise ValueError(f"Operator on {pauli.n_qubits} qubits, state has {self.n_qubits}")
        n = self.n_qubits
        weights = 1 << np.arange(n - 1, -1, -1)
        x_mask = int(np.dot(pauli.x_bits.astype(np.int64), weights))
        indices = np.arange(2 ** n)
        parity = np.zeros(2 ** n, dtype=np.int64)
        for j in np.nonzero(pauli.z_bits)[0]:
            parity ^= (indices >> (n - 1 - j)) & 1
        signs = 1 - 2 * parity
        out = np.zeros_like(self.amplitudes)
        out[indices ^ x_mask] = (1j ** pauli.phase_power) * signs * self.amplitudes
        return DenseState(n, out, self.empty)

    def expectation(self, pauli: PauliString) -> float:
        return float(np.real(np.vdot(self.amplitudes, self.apply_pauli(pauli).amplitudes)))

    def apply_exponent(self, modes: Sequence[int], angle: float) -> 'DenseState':
        """
        exp(-angle * M) with M the anti-Hermitian form of the monomial.

        angle = pi/4 on a pair gives the braid B_{p,q}.
        """
        gen = monomial(modes, self.n_qubits).anti_hermitian_form()
        rotated = self.apply_pauli(gen).amplitudes
        return DenseState(self.n_qubits,
                          np.cos(angle) * self.amplitudes - np.sin(angle) * rotated,
                          self.empty)

    def braid(self, p: int, q: int, inverse: bool = False) -> 'DenseState':
        return self.apply_exponent((p, q), -np.pi / 4 if inverse else np.pi / 4)

    def exponent(self, modes: Sequence[int], quarter_turns: int) -> 'DenseState':
        return self.apply_exponent(modes, quarter_turns * np.pi / 4)

    def project_monomial(self, modes: Sequence[int], sign: int = 1) -> Tuple[float, 'DenseState']:
        """
        Project onto the sign eigenspace of the Hermitian monomial.

        Returns:
            (Born probability, renormalized state); an empty state when the
            probability vanishes
        """
        if sign not in (1, -1):
            raise ValueError(f"Projector sign must be +1 or -1, got {sign}")
        observable = hermitian_monomial(modes, self.n_qubits)
        projected = (self.amplitudes + sign * self.apply_pauli(observable).amplitudes) / 2
        probability = float(np.real(np.vdot(projected, projected)))
        if probability < ZERO_PROBABILITY:
            return 0.0, DenseState.empty_state(self.n_qubits)
        return probability, DenseState(self.n_qubits, projected / np.sqrt(probability))

    def measure(self, modes: Sequence[int], rng: Optional[np.random.Generator] = None,
                forced: Optional[int] = None) -> Tuple[int, float, 'DenseState']:
        """Same contract as StabilizerTableau.measure, with Born probabilities"""
        p_zero, zero_state = self.project_monomial(modes, 1)
        if forced is None:
            if rng is not None:
                bit = 0 if rng.random() < p_zero else 1
            elif p_zero > 1 - ZERO_PROBABILITY:
                bit = 0
            elif p_zero < ZERO_PROBABILITY:
                bit = 1
            else:
                raise ValueError("Random measurement outcome requires an rng or a forced outcome")
        else:
            bit = int(forced)
        if bit == 0:
            return 0, p_zero, zero_state
        p_one, one_state = self.project_monomial(modes, -1)
        return 1, p_one, one_state

    # ------------------------------------------------------------------
    # Comparison and entanglement
    # ------------------------------------------------------------------

    def fidelity(self, other: 'DenseState') -> float:
        return fidelity(self, other)

    def canonical_key(self, decimals: int = 6) -> bytes:
        """Phase-normalized, rounded amplitudes as bytes"""
        vec = self.amplitudes
        lead = np.nonzero(np.abs(vec) > 1e-6)[0]
        if lead.size:
            vec = vec * np.conj(vec[lead[0]]) / abs(vec[lead[0]])
        rounded = np.round(vec, decimals) + (0.0 + 0.0j)
        return rounded.tobytes()

    def _matricize(self, keep_qubits: Sequence[int]) -> np.ndarray:
        keep = [int(q) for q in keep_qubits]
        if len(set(keep)) != len(keep) or any(not 1 <= q <= self.n_qubits for q in keep):
            raise ValueError(f"Invalid qubit partition {keep} for {self.n_qubits} qubits")
        rest = [q for q in range(1, self.n_qubits + 1) if q not in keep]
        tensor = self.amplitudes.reshape((2,) * self.n_qubits)
        order = [q - 1 for q in keep] + [q - 1 for q in rest]
        return tensor.transpose(order).reshape(2 ** len(keep), 2 ** len(rest))

    def schmidt_coefficients(self, keep_qubits: Sequence[int]) -> np.ndarray:
        return linalg.svd(self._matricize(keep_qubits), compute_uv=False)

    def schmidt_decomposition(self, keep_qubits: Sequence[int],
                              tolerance: float = 1e-14) -> List[Tuple[float, 'DenseState']]:
        """Reduced state on keep_qubits as weighted Schmidt vectors"""
        u, s, _ = linalg.svd(self._matricize(keep_qubits), full_matrices=False)
        n_keep = len(list(keep_qubits))
        return [(float(w ** 2), DenseState(n_keep, u[:, k])) for k, w in enumerate(s) if w ** 2 > tolerance]

    def factor_out(self, keep_qubits: Sequence[int], tolerance: float = 1e-8) -> 'DenseState':
        """
        Pure factor on keep_qubits of a state that is a product across the cut.

        Raises:
            ValueError: if the state is entangled across the cut
        """
        matrix = self._matricize(keep_qubits)
        u, s, _ = linalg.svd(matrix)
        if len(s) > 1 and s[1] > tolerance:
            raise ValueError(f"State is entangled across the cut (second Schmidt value {s[1]:.3e})")
        return DenseState(len(list(keep_qubits)), u[:, 0])

    def __repr__(self) -> str:
        return f"DenseState(n_qubits={self.n_qubits}, empty={self.empty})"


Ensemble = List[Tuple[float, DenseState]]


def fidelity(a: DenseState, b: DenseState) -> float:
    """|<a|b>|^2, phase-invariant"""
    if a.n_qubits != b.n_qubits:
        raise ValueError(f"Dimension mismatch: {a.n_qubits} vs {b.n_qubits} qubits")
    return float(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2)


def ensemble_fidelity(target: DenseState, ensemble: Ensemble) -> float:
    """<target| rho |target> for rho given as weighted pure states"""
    total = sum(weight for weight, _ in ensemble)
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"Ensemble weights sum to {total}, expected 1")
    return float(sum(weight * fidelity(target, state) for weight, state in ensemble))


def schmidt_rank(state: DenseState, keep_qubits: Sequence[int], tolerance: float = 1e-10) -> int:
    """Number of Schmidt coefficients above tolerance across keep_qubits | rest"""
    return int(np.sum(state.schmidt_coefficients(keep_qubits) > tolerance))


def qubits_of_modes(modes: Sequence[int]) -> List[int]:
    """Qubits carrying a set of modes; qubit j holds modes 2j-1 and 2j"""
    modes = sorted(int(p) for p in modes)
    qubits = sorted({(p + 1) // 2 for p in modes})
    if sorted(m for j in qubits for m in (2 * j - 1, 2 * j)) != modes:
        raise ValueError(f"Modes {modes} do not align with qubit pairs")
    return qubits


def apply_exponent(state: DenseState, modes: Sequence[int], angle: float) -> DenseState:
    return state.apply_exponent(modes, angle)


def project_monomial(state: DenseState, modes: Sequence[int], sign: int = 1) -> Tuple[float, DenseState]:
    return state.project_monomial(modes, sign)

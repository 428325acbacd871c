"""
Pauli Strings and Majorana Monomials

Signed Pauli operators i^k X^x Z^z on n qubits stored as GF(2) bit vectors,
plus the Jordan-Wigner embedding of the 2n Majorana operators.
Qubit 1 is the leftmost tensor factor.
"""

import logging
from functools import reduce
from typing import Iterable, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)

_SIGN_PREFIXES = {'+': 0, '+i': 1, '-': 2, '-i': 3, 'i': 1, '': 0}
_PHASE_TEXT = {0: '+', 1: '+i', 2: '-', 3: '-i'}

_PAULI_MATRICES = {
    (0, 0): np.eye(2, dtype=complex),
    (1, 0): np.array([[0, 1], [1, 0]], dtype=complex),
    (0, 1): np.array([[1, 0], [0, -1]], dtype=complex),
    (1, 1): np.array([[0, -1], [1, 0]], dtype=complex),  # X Z
}


class PauliString:
    """
    Operator i^phase_power * X^x_bits * Z^z_bits.

    A Y on qubit j is stored as x_j = z_j = 1 with one extra power of i,
    since Y = iXZ.
    """

    __slots__ = ('n_qubits', 'phase_power', 'x_bits', 'z_bits')

    def __init__(self, n_qubits: int, phase_power: int = 0,
                 x_bits: Iterable[int] = None, z_bits: Iterable[int] = None):
        if n_qubits < 0:
            raise ValueError(f"Qubit count must be non-negative, got {n_qubits}")
        self.n_qubits = int(n_qubits)
        self.phase_power = int(phase_power) % 4
        self.x_bits = np.zeros(n_qubits, dtype=np.uint8) if x_bits is None \
            else np.asarray(x_bits, dtype=np.uint8) & 1
        self.z_bits = np.zeros(n_qubits, dtype=np.uint8) if z_bits is None \
            else np.asarray(z_bits, dtype=np.uint8) & 1
        if self.x_bits.shape != (n_qubits,) or self.z_bits.shape != (n_qubits,):
            raise ValueError(f"Bit vectors must have length {n_qubits}")

    @classmethod
    def identity(cls, n_qubits: int) -> 'PauliString':
        return cls(n_qubits)

    @classmethod
    def from_label(cls, label: str) -> 'PauliString':
        """
        Parse labels such as "XZ", "-ZZ", "+iYI".

        Args:
            label: Optional sign prefix (+, -, +i, -i, i) followed by I/X/Y/Z letters

        Returns:
            The corresponding PauliString
        """
        body = label.lstrip('+-i')
        prefix = label[:len(label) - len(body)]
        if prefix not in _SIGN_PREFIXES:
            raise ValueError(f"Invalid sign prefix in Pauli label: {label!r}")
        power = _SIGN_PREFIXES[prefix]
        n = len(body)
        x = np.zeros(n, dtype=np.uint8)
        z = np.zeros(n, dtype=np.uint8)
        for j, char in enumerate(body.upper()):
            if char == 'X':
                x[j] = 1
            elif char == 'Z':
                z[j] = 1
            elif char == 'Y':
                x[j] = z[j] = 1
                power += 1
            elif char != 'I':
                raise ValueError(f"Invalid Pauli letter {char!r} in {label!r}")
        return cls(n, power, x, z)

    def copy(self) -> 'PauliString':
        return PauliString(self.n_qubits, self.phase_power, self.x_bits.copy(), self.z_bits.copy())

    def __mul__(self, other: 'PauliString') -> 'PauliString':
        if self.n_qubits != other.n_qubits:
            raise ValueError(f"Qubit count mismatch: {self.n_qubits} vs {other.n_qubits}")
        # Z^z1 X^x2 = (-1)^{z1.x2} X^x2 Z^z1
        swap = int(np.dot(self.z_bits, other.x_bits)) & 1
        return PauliString(
            self.n_qubits,
            self.phase_power + other.phase_power + 2 * swap,
            self.x_bits ^ other.x_bits,
            self.z_bits ^ other.z_bits,
        )

    def __neg__(self) -> 'PauliString':
        return self.times_i(2)

    def times_i(self, power: int = 1) -> 'PauliString':
        """Multiply by i^power"""
        return PauliString(self.n_qubits, self.phase_power + power, self.x_bits, self.z_bits)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliString):
            return NotImplemented
        return (self.n_qubits == other.n_qubits and self.phase_power == other.phase_power
                and np.array_equal(self.x_bits, other.x_bits)
                and np.array_equal(self.z_bits, other.z_bits))

    def __hash__(self) -> int:
        return hash((self.phase_power, self.x_bits.tobytes(), self.z_bits.tobytes()))

    def same_support(self, other: 'PauliString') -> bool:
        """Equal up to the i^k prefactor"""
        return (np.array_equal(self.x_bits, other.x_bits)
                and np.array_equal(self.z_bits, other.z_bits))

    def commutes_with(self, other: 'PauliString') -> bool:
        form = int(np.dot(self.z_bits, other.x_bits)) + int(np.dot(self.x_bits, other.z_bits))
        return form % 2 == 0

    def square_sign(self) -> int:
        """Return +1 or -1 such that P*P = sign * I"""
        exponent = self.phase_power + int(np.dot(self.x_bits, self.z_bits))
        return 1 if exponent % 2 == 0 else -1

    def is_hermitian(self) -> bool:
        return self.square_sign() == 1

    def is_identity(self) -> bool:
        return not self.x_bits.any() and not self.z_bits.any()

    def hermitian_form(self) -> 'PauliString':
        """Rescale by a power of i so that the result squares to +I"""
        return self if self.is_hermitian() else self.times_i(3)

    def anti_hermitian_form(self) -> 'PauliString':
        """Rescale by a power of i so that the result squares to -I"""
        return self.times_i(1) if self.is_hermitian() else self

    def weight(self) -> int:
        return int(np.count_nonzero(self.x_bits | self.z_bits))

    def symplectic(self) -> np.ndarray:
        """Concatenated [x | z] bit row"""
        return np.concatenate([self.x_bits, self.z_bits])

    def to_matrix(self) -> np.ndarray:
        """Dense 2^n x 2^n matrix"""
        factors = [_PAULI_MATRICES[(int(x), int(z))] for x, z in zip(self.x_bits, self.z_bits)]
        matrix = reduce(np.kron, factors, np.eye(1, dtype=complex))
        return (1j ** self.phase_power) * matrix

    def __str__(self) -> str:
        letters = []
        power = self.phase_power
        for x, z in zip(self.x_bits, self.z_bits):
            if x and z:
                letters.append('Y')
                power -= 1
            elif x:
                letters.append('X')
            elif z:
                letters.append('Z')
            else:
                letters.append('I')
        return _PHASE_TEXT[power % 4] + ''.join(letters)

    def __repr__(self) -> str:
        return f"PauliString('{self}')"


def jordan_wigner(p: int, n: int) -> PauliString:
    """
    Majorana operator c_p on n qubits.

    c_{2j-1} = Z...Z X_j and c_{2j} = Z...Z Y_j with the Z string on qubits 1..j-1.

    Args:
        p: Mode index, 1 <= p <= 2n
        n: Number of qubits

    Returns:
        c_p as a PauliString
    """
    if not 1 <= p <= 2 * n:
        raise ValueError(f"Mode index {p} out of range for {2 * n} modes")
    j = (p + 1) // 2
    x = np.zeros(n, dtype=np.uint8)
    z = np.zeros(n, dtype=np.uint8)
    z[:j - 1] = 1
    x[j - 1] = 1
    power = 0
    if p % 2 == 0:
        z[j - 1] = 1
        power = 1
    return PauliString(n, power, x, z)


def monomial(modes: Sequence[int], n: int) -> PauliString:
    """
    Ordered product c_{p1} c_{p2} ... c_{pk} on n qubits.

    Args:
        modes: Distinct mode indices in multiplication order
        n: Number of qubits

    Returns:
        The product with exact i^k bookkeeping; identity for an empty list
    """
    modes = [int(p) for p in modes]
    if len(set(modes)) != len(modes):
        raise ValueError(f"Duplicate mode index in monomial {tuple(modes)}")
    result = PauliString.identity(n)
    for p in modes:
        result = result * jordan_wigner(p, n)
    return result


def hermitian_monomial(modes: Sequence[int], n: int) -> PauliString:
    """Monomial rescaled to a Hermitian observable (e.g. -i c_p c_q for a pair)"""
    return monomial(modes, n).hermitian_form()


def monomial_label(modes: Sequence[int]) -> str:
    return ''.join(f"c{p}" for p in modes)


def pair_label(p: int, q: int) -> str:
    return f"F({p},{q})"


def modes_to_qubits(n_modes: int) -> int:
    if n_modes <= 0 or n_modes % 2:
        raise ValueError(f"Mode count must be a positive even number, got {n_modes}")
    return n_modes // 2


def quarter_turn_conjugate(operator: PauliString, generator: PauliString, turns: int) -> PauliString:
    """
    Conjugate by exp(-turns * pi/4 * M) where M squares to -I.

    An operator anticommuting with M picks up -M on the left per quarter turn.
    """
    if generator.square_sign() != -1:
        raise ValueError(f"Exponent generator {generator} must square to -I")
    result = operator
    for _ in range(turns % 4):
        if result.commutes_with(generator):
            break
        result = (-generator) * result
    return result


def symplectic_rows(paulis: Sequence[PauliString]) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Stack Pauli strings into (x, z, phase) arrays"""
    x = np.array([p.x_bits for p in paulis], dtype=np.uint8)
    z = np.array([p.z_bits for p in paulis], dtype=np.uint8)
    phase = np.array([p.phase_power for p in paulis], dtype=np.int64)
    return x, z, phase

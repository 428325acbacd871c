"""
Punctured Reed-Muller Code

The 15-qubit CSS code used for |a4> distillation. Column j (1..15) is the
4-bit counter value j; sigma^x stabilizers are the four bit rows, sigma^z
stabilizers are the bit rows plus their six pairwise products.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Dict

import numpy as np

logger = logging.getLogger(__name__)

N_QUBITS = 15
N_PATTERNS = 2 ** N_QUBITS


def gf2_rank(matrix: np.ndarray) -> int:
    rows = [int(''.join(str(int(b)) for b in row), 2) for row in np.asarray(matrix) % 2]
    rank = 0
    while rows:
        pivot = max(rows)
        rows.remove(pivot)
        if pivot == 0:
            continue
        rank += 1
        top = pivot.bit_length() - 1
        rows = [r ^ pivot if (r >> top) & 1 else r for r in rows]
    return rank


def _popcount(values: np.ndarray) -> np.ndarray:
    counts = np.zeros_like(values)
    v = values.copy()
    while np.any(v):
        counts += v & 1
        v >>= 1
    return counts


def _row_mask(row: np.ndarray) -> int:
    """Pattern bit j-1 holds qubit j"""
    return int(sum(1 << j for j in np.nonzero(row)[0]))


@dataclass
class RMCode:
    x_stabilizers: np.ndarray
    z_stabilizers: np.ndarray
    logical_x: np.ndarray
    logical_z: np.ndarray
    weight_enumerator: Dict[str, np.ndarray] = field(default_factory=dict)

    @property
    def n_generators(self) -> int:
        return len(self.x_stabilizers) + len(self.z_stabilizers)

    @property
    def total_stabilizer_weight(self) -> int:
        """Sum of generator weights, i.e. single-qubit operations per syndrome round"""
        return int(self.x_stabilizers.sum() + self.z_stabilizers.sum())

    @property
    def min_logical_weight(self) -> int:
        logical = self.weight_enumerator["logical"]
        return int(np.nonzero(logical)[0][0])

    def x_syndrome(self, pattern: int) -> int:
        """Syndrome of a sigma^z error pattern under the sigma^x stabilizers"""
        s = 0
        for row in self.x_stabilizers:
            s = (s << 1) | (bin(pattern & _row_mask(row)).count('1') & 1)
        return s

    def to_dict(self):
        return {
            "x_stabilizers": self.x_stabilizers.tolist(),
            "z_stabilizers": self.z_stabilizers.tolist(),
            "benign_weights": self.weight_enumerator["benign"].tolist(),
            "logical_weights": self.weight_enumerator["logical"].tolist(),
        }


def _bit_rows() -> np.ndarray:
    columns = np.arange(1, N_QUBITS + 1)
    return np.array([(columns >> i) & 1 for i in range(4)], dtype=np.uint8)


def undetected_weight_enumerator(x_stabilizers: np.ndarray, z_stabilizers: np.ndarray,
                                 logical_x: np.ndarray) -> Dict[str, np.ndarray]:
    """
    Split the sigma^z error patterns that pass every sigma^x check into benign
    (stabilizer) and logical classes, counted by Hamming weight.
    """
    patterns = np.arange(N_PATTERNS, dtype=np.int64)
    detected = np.zeros(N_PATTERNS, dtype=bool)
    for row in x_stabilizers:
        detected |= (_popcount(patterns & _row_mask(row)) & 1).astype(bool)
    # Undetected patterns flip the logical iff they anticommute with logical X,
    # whose support is all qubits; benign ones lie in the sigma^z stabilizer span
    logical_mask = _row_mask(logical_x)
    weights = _popcount(patterns)
    flips_logical = (_popcount(patterns & logical_mask) & 1).astype(bool)
    undetected = ~detected
    benign = np.bincount(weights[undetected & ~flips_logical], minlength=N_QUBITS + 1)
    logical = np.bincount(weights[undetected & flips_logical], minlength=N_QUBITS + 1)

    span = np.zeros(N_PATTERNS, dtype=bool)
    span_masks = {0}
    for row in z_stabilizers:
        m = _row_mask(row)
        span_masks |= {v ^ m for v in span_masks}
    span[list(span_masks)] = True
    if not np.array_equal(span, undetected & ~flips_logical):
        raise RuntimeError("Benign undetected patterns differ from the sigma^z stabilizer span")
    return {"benign": benign, "logical": logical}


@lru_cache(maxsize=None)
def build_rm_code() -> RMCode:
    """
    Construct and self-check the code.

    Raises:
        RuntimeError: if any structural check fails
    """
    bits = _bit_rows()
    products = np.array([bits[a] & bits[b] for a, b in combinations(range(4), 2)], dtype=np.uint8)
    x_stabilizers = bits.copy()
    z_stabilizers = np.vstack([bits, products])
    ones = np.ones(N_QUBITS, dtype=np.uint8)

    overlaps = (x_stabilizers.astype(int) @ z_stabilizers.T.astype(int)) % 2
    if overlaps.any():
        raise RuntimeError("sigma^x and sigma^z stabilizers do not commute")
    if gf2_rank(x_stabilizers) + gf2_rank(z_stabilizers) != N_QUBITS - 1:
        raise RuntimeError("Stabilizers do not leave exactly one logical qubit")
    if ((x_stabilizers.astype(int) @ ones) % 2).any() or ((z_stabilizers.astype(int) @ ones) % 2).any():
        raise RuntimeError("Logical operators do not commute with the stabilizers")

    enumerator = undetected_weight_enumerator(x_stabilizers, z_stabilizers, ones)
    code = RMCode(x_stabilizers, z_stabilizers, ones.copy(), ones.copy(), enumerator)
    if code.min_logical_weight != 3:
        raise RuntimeError(f"Minimum undetected logical weight is {code.min_logical_weight}, expected 3")
    logger.info(f"Reed-Muller code built: {code.n_generators} generators, "
                f"total weight {code.total_stabilizer_weight}")
    return code


def transversal_phase_exponent(code: RMCode = None) -> int:
    """
    Logical phase exponent m with T^{x15} acting as diag(1, e^{i m pi/4}).

    Raises:
        RuntimeError: if T^{x15} does not preserve the code space
    """
    code = code or build_rm_code()
    span = [np.zeros(N_QUBITS, dtype=np.uint8)]
    for row in code.x_stabilizers:
        span += [(v ^ row) for v in span]
    zero_weights = {int(v.sum()) % 8 for v in span}
    one_weights = {int((v ^ code.logical_x).sum()) % 8 for v in span}
    if len(zero_weights) != 1 or len(one_weights) != 1:
        raise RuntimeError("Transversal T does not act uniformly on the logical cosets")
    return (one_weights.pop() - zero_weights.pop()) % 8

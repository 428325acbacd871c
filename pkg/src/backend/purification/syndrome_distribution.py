"""
Syndrome Distributions over the eight |a8> code syndromes
"""
import logging
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np

logger = logging.getLogger(__name__)

N_SYNDROMES = 8
NORMALIZATION_TOLERANCE = 1e-12

# Syndrome index s = 4*s1 + 2*s2 + s3
BIT_VALUES = {1: 4, 2: 2, 3: 1}

# Whirl permutation s -> eta(s), a 7-cycle on the nonzero syndromes
WHIRL_PERMUTATION = (0, 3, 7, 4, 5, 6, 2, 1)


def syndrome_index(s1: int, s2: int, s3: int) -> int:
    return 4 * s1 + 2 * s2 + s3


def syndrome_bits(s: int) -> Tuple[int, int, int]:
    if not 0 <= s < N_SYNDROMES:
        raise ValueError(f"Syndrome index {s} out of range")
    return (s >> 2) & 1, (s >> 1) & 1, s & 1


@dataclass
class SyndromeDistribution:
    """Probability vector p(s) over s = 4 s1 + 2 s2 + s3"""
    p: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        if p.shape != (N_SYNDROMES,):
            raise ValueError(f"Syndrome distribution needs {N_SYNDROMES} entries, got shape {p.shape}")
        if np.any(p < -NORMALIZATION_TOLERANCE):
            raise ValueError(f"Negative syndrome probability in {p}")
        total = p.sum()
        if abs(total - 1.0) > NORMALIZATION_TOLERANCE * N_SYNDROMES:
            raise ValueError(f"Syndrome probabilities sum to {total!r}, expected 1")
        self.p = np.clip(p, 0.0, None)

    @classmethod
    def delta(cls, s: int = 0) -> 'SyndromeDistribution':
        p = np.zeros(N_SYNDROMES)
        p[s] = 1.0
        return cls(p)

    @classmethod
    def bimodal(cls, eps: float) -> 'SyndromeDistribution':
        """p(0) = 1 - eps, remaining mass spread evenly over the 7 nonzero syndromes"""
        if not 0.0 <= eps <= 1.0:
            raise ValueError(f"Error rate must lie in [0, 1], got {eps}")
        p = np.full(N_SYNDROMES, eps / 7.0)
        p[0] = 1.0 - eps
        return cls(p)

    @classmethod
    def uniform(cls) -> 'SyndromeDistribution':
        return cls(np.full(N_SYNDROMES, 1.0 / N_SYNDROMES))

    @classmethod
    def from_weights(cls, weights: Sequence[float]) -> 'SyndromeDistribution':
        """Normalize non-negative weights (e.g. an unnormalized contraction)"""
        w = np.asarray(weights, dtype=float)
        total = w.sum()
        if total <= 0:
            raise ValueError("Cannot normalize an all-zero syndrome weight vector")
        return cls(w / total)

    @property
    def error(self) -> float:
        """Probability of a nonzero syndrome"""
        return float(1.0 - self.p[0])

    def bit_error(self, bit: int) -> float:
        """Marginal probability that syndrome bit s_bit (1, 2 or 3) is set"""
        mask = BIT_VALUES[bit]
        return float(sum(self.p[s] for s in range(N_SYNDROMES) if s & mask))

    def permuted(self, permutation: Sequence[int]) -> 'SyndromeDistribution':
        """Distribution of perm(s) when s ~ self"""
        out = np.zeros(N_SYNDROMES)
        for s, target in enumerate(permutation):
            out[target] += self.p[s]
        return SyndromeDistribution(out)

    def is_bimodal(self, tolerance: float = 1e-12) -> bool:
        return bool(np.ptp(self.p[1:]) <= tolerance)

    def sample(self, rng: np.random.Generator, size: Union[int, Tuple[int, ...]]) -> np.ndarray:
        return rng.choice(N_SYNDROMES, size=size, p=self.p).astype(np.int8)

    def to_dict(self):
        return {"p": self.p.tolist(), "error": self.error}

    def __repr__(self) -> str:
        return f"SyndromeDistribution({np.array2string(self.p, precision=6)})"

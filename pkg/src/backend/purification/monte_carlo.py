"""
Monte Carlo Yield of Recursive |a8> Purification

Each trial starts from n0 raw copies with syndromes drawn from the bimodal
distribution. At every level the copies are grouped by eight, whirled by a
random power of eta and fed through the 4+2+1 tree of elementary rounds;
a group yields one copy of the next level only if all seven rounds accept.
Leftover copies are discarded at level boundaries.
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np
from joblib import Parallel, delayed
from scipy.stats import binom

from .flow_equations import FULL_ROUND_STAGES, flow_a8, threshold_a8
from .purification_circuits import whirl_power
from .schedule import naive_n0
from .syndrome_distribution import SyndromeDistribution

logger = logging.getLogger(__name__)

GROUP_SIZE = 8
ETA_TABLE = np.array([whirl_power(k) for k in range(7)], dtype=np.int8)


@dataclass
class MonteCarloResult:
    eps0: float
    k: int
    n0: int
    trials: int
    successes: int
    seed: int

    @property
    def success_probability(self) -> float:
        return self.successes / self.trials

    @property
    def stderr(self) -> float:
        p = self.success_probability
        return math.sqrt(p * (1 - p) / self.trials)

    def to_dict(self):
        return {
            "n0": self.n0,
            "k": self.k,
            "eps0": self.eps0,
            "trials": self.trials,
            "success_prob": self.success_probability,
            "stderr": self.stderr,
        }


def purify_level(inventory: np.ndarray, counts: np.ndarray,
                 rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    """
    One purification level for a batch of trials.

    Args:
        inventory: (trials, width) syndromes, valid entries packed to the left
        counts: Valid entries per trial
        rng: Source of whirl powers

    Returns:
        (next inventory, next counts)
    """
    trials = inventory.shape[0]
    groups = counts // GROUP_SIZE
    width = int(groups.max()) if trials else 0
    if width == 0:
        return np.zeros((trials, 0), dtype=np.int8), np.zeros(trials, dtype=np.int64)
    block = inventory[:, :GROUP_SIZE * width].reshape(trials, width, GROUP_SIZE)
    powers = rng.integers(0, 7, size=block.shape)
    block = ETA_TABLE[powers, block]
    ok = np.arange(width)[None, :] < groups[:, None]
    for mask in FULL_ROUND_STAGES:
        a, b = block[..., 0::2], block[..., 1::2]
        ok &= np.all(((a ^ b) & mask) == 0, axis=-1)
        block = (a ^ b) | (a & mask)
    survivors = block[..., 0]
    order = np.argsort(~ok, axis=1, kind='stable')
    return np.take_along_axis(survivors, order, axis=1), ok.sum(axis=1)


def _run_chunk(eps0: float, k_target: int, n0: int, trials: int,
               seed_sequence: np.random.SeedSequence) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(seed_sequence))
    inventory = SyndromeDistribution.bimodal(eps0).sample(rng, (trials, n0))
    counts = np.full(trials, n0, dtype=np.int64)
    for _ in range(k_target):
        inventory, counts = purify_level(inventory, counts, rng)
    return counts > 0


def simulate_trials(eps0: float, k_target: int, n0: int, trials: int, seed: int,
                    threads: int = 1, chunk_size: int = 256) -> np.ndarray:
    """Per-trial success flags; independent of the thread count for a fixed seed"""
    if trials < 1:
        raise ValueError(f"Need at least one trial, got {trials}")
    if n0 < 1 or k_target < 0:
        raise ValueError(f"Invalid inventory n0={n0}, k={k_target}")
    sizes = [chunk_size] * (trials // chunk_size)
    if trials % chunk_size:
        sizes.append(trials % chunk_size)
    streams = np.random.SeedSequence(seed).spawn(len(sizes))
    flags = Parallel(n_jobs=threads, prefer="threads")(
        delayed(_run_chunk)(eps0, k_target, n0, size, stream)
        for size, stream in zip(sizes, streams)
    )
    return np.concatenate(flags)


def monte_carlo(eps0: float, k_target: int, n0: int, trials: int, seed: int,
                threads: int = 1, chunk_size: int = 256,
                threshold: Optional[float] = None) -> MonteCarloResult:
    """
    Estimate P(at least one level-k copy survives) from n0 raw copies.

    Raises:
        ValueError: if eps0 is not below the purification threshold
    """
    threshold = threshold if threshold is not None else threshold_a8()
    if not 0.0 <= eps0 < threshold:
        raise ValueError(f"Initial error {eps0} is not below threshold {threshold:.6f}")
    flags = simulate_trials(eps0, k_target, n0, trials, seed, threads, chunk_size)
    result = MonteCarloResult(eps0, k_target, n0, trials, int(flags.sum()), seed)
    logger.info(f"Monte Carlo eps0={eps0} k={k_target} n0={n0}: "
                f"P={result.success_probability:.4f} +- {result.stderr:.4f}")
    return result


def closed_form_success(eps0: float, n0: int) -> float:
    """Exact one-level success probability 1 - (1 - Z)^{floor(n0/8)}"""
    z = flow_a8(eps0).Z
    return 1.0 - (1.0 - z) ** (n0 // GROUP_SIZE)


def chain_success_probability(eps0: float, k: int, n0: int) -> float:
    """
    Exact P(n_k > 0) for the grouped inventory.

    Groups of eight at level j accept independently with probability
    Z(eps_j), so n_{j+1} ~ Binomial(floor(n_j / 8), Z(eps_j)).
    """
    if n0 < 0 or k < 0:
        raise ValueError(f"Invalid inventory n0={n0}, k={k}")
    dist = np.zeros(n0 + 1)
    dist[n0] = 1.0
    eps = eps0
    for _ in range(k):
        result = flow_a8(eps)
        by_groups = np.bincount(np.arange(dist.size) // GROUP_SIZE, weights=dist)
        following = np.zeros(by_groups.size)
        for groups in np.flatnonzero(by_groups):
            following[:groups + 1] += by_groups[groups] * binom.pmf(np.arange(groups + 1), groups, result.Z)
        dist = following
        eps = result.eps_out
    return float(1.0 - dist[0])


def _smallest_n0(probability: Callable[[int], float], k: int, start: float) -> int:
    """Smallest integer n0 with probability(n0) >= 1/2, for nondecreasing probability"""
    low = GROUP_SIZE ** k
    if probability(low) >= 0.5:
        return low
    high = max(low + 1, int(math.ceil(start)))
    while probability(high) < 0.5:
        low, high = high, 2 * high
    while high - low > 1:
        mid = (low + high) // 2
        if probability(mid) >= 0.5:
            high = mid
        else:
            low = mid
    return high


def chain_n0_half(eps0: float, k: int) -> int:
    """Smallest n0 whose exact success probability reaches 1/2"""
    n0 = _smallest_n0(lambda n: chain_success_probability(eps0, k, n), k, naive_n0(eps0, k))
    logger.debug(f"Exact n0 at P=1/2 for eps0={eps0}, k={k}: {n0}")
    return n0


def solve_n0_half(eps0: float, k: int, trials: int, seed: int, threads: int = 1,
                  chunk_size: int = 256) -> int:
    """Smallest integer n0 with Monte Carlo success probability >= 1/2"""
    threshold = threshold_a8()

    def probability(n0: int) -> float:
        return monte_carlo(eps0, k, n0, trials, seed, threads, chunk_size,
                           threshold).success_probability

    n0 = _smallest_n0(probability, k, naive_n0(eps0, k))
    logger.info(f"n0 at P=1/2 for eps0={eps0}, k={k}: {n0} (naive {naive_n0(eps0, k):.1f})")
    return n0


def batching_failure_probability(L: int, success_probability: float = 0.5) -> float:
    """P(fewer than L of 3L independent groups succeed)"""
    return float(binom.cdf(L - 1, 3 * L, success_probability))


def batching_bound(L: int) -> float:
    """exp(-L/12), the Chernoff-type bound for success probability 1/2"""
    return math.exp(-L / 12.0)


def batching_experiment(L: int, eps0: float, k: int, n0: int, repetitions: int,
                        seed: int, threads: int = 1) -> float:
    """Empirical P(fewer than L successes) for 3L groups of n0 raw copies each"""
    flags = simulate_trials(eps0, k, n0, 3 * L * repetitions, seed, threads)
    successes = flags.reshape(repetitions, 3 * L).sum(axis=1)
    return float(np.mean(successes < L))


def sweep_n0(eps0: float, k: int, n0_values: List[int], trials: int, seed: int,
             threads: int = 1) -> List[MonteCarloResult]:
    threshold = threshold_a8()
    return [monte_carlo(eps0, k, n0, trials, seed, threads, threshold=threshold)
            for n0 in n0_values]

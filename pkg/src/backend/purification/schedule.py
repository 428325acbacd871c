"""
Purification Schedules

Recursive level-by-level iteration of an exact flow map, with the number
of raw copies needed per output copy.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional

import pandas as pd

from .flow_equations import QUADRATIC_COEFFICIENT, FlowResult, flow_a8, threshold_a8

logger = logging.getLogger(__name__)

MAX_LEVELS = 64


@dataclass
class PurificationLevel:
    """Error rate, acceptance and copies per final output at level k"""
    k: int
    eps: float
    n: float
    acceptance: float = 1.0

    def to_dict(self):
        return {"k": self.k, "eps": self.eps, "n": self.n, "acceptance": self.acceptance}


@dataclass
class PurificationSchedule:
    eps0: float
    eps_target: float
    copies_per_round: int
    levels: List[PurificationLevel] = field(default_factory=list)

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    @property
    def n0(self) -> float:
        return self.levels[0].n

    @property
    def final_eps(self) -> float:
        return self.levels[-1].eps

    def to_dict(self):
        return {
            "eps0": self.eps0,
            "eps_target": self.eps_target,
            "copies_per_round": self.copies_per_round,
            "depth": self.depth,
            "n0": self.n0,
            "levels": [level.to_dict() for level in self.levels],
        }

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([level.to_dict() for level in self.levels])


def build_schedule(eps0: float, eps_target: float, flow: Callable[[float], FlowResult],
                   threshold: float, copies_per_round: int,
                   max_levels: int = MAX_LEVELS) -> PurificationSchedule:
    """
    Iterate eps_{k+1} = flow(eps_k) until eps_target is reached, then count
    copies backwards with n_k = copies_per_round * n_{k+1} / acceptance(eps_k).

    Raises:
        ValueError: if eps0 is not below threshold or the target needs more than max_levels levels
    """
    if eps_target <= 0:
        raise ValueError(f"Target error rate must be positive, got {eps_target}")
    if eps0 >= threshold:
        raise ValueError(f"Initial error {eps0} is not below threshold {threshold:.6f}; schedule diverges")
    eps_values = [eps0]
    acceptances: List[float] = []
    while eps_values[-1] > eps_target:
        if len(eps_values) > max_levels:
            raise ValueError(f"Target {eps_target} not reached within {max_levels} levels")
        result = flow(eps_values[-1])
        acceptances.append(result.Z)
        eps_values.append(result.eps_out)
    counts = [1.0]
    for z in reversed(acceptances):
        counts.append(copies_per_round * counts[-1] / z)
    counts.reverse()
    levels = [PurificationLevel(k, eps_values[k], counts[k],
                                acceptances[k] if k < len(acceptances) else 1.0)
              for k in range(len(eps_values))]
    schedule = PurificationSchedule(eps0, eps_target, copies_per_round, levels)
    logger.info(f"Schedule from {eps0} to {eps_target}: {schedule.depth} levels, n0 = {schedule.n0:.4g}")
    return schedule


def schedule(eps0: float, eps_target: float, threshold: Optional[float] = None) -> PurificationSchedule:
    """|a8> purification schedule using the exact full-round flow"""
    threshold = threshold if threshold is not None else threshold_a8()
    return build_schedule(eps0, eps_target, flow_a8, threshold, copies_per_round=8)


def level_estimate(eps0: float, eps_target: float) -> int:
    """Closed-form depth from 2^k ~ log(C eps') / log(C eps0) with C = 48/49"""
    c = float(QUADRATIC_COEFFICIENT)
    if not 0 < eps0 < 1 / c:
        raise ValueError(f"Initial error {eps0} outside the quadratic regime")
    if eps_target >= eps0:
        return 0
    ratio = math.log(c * eps_target) / math.log(c * eps0)
    return max(0, math.ceil(math.log2(ratio)))


def naive_n0(eps0: float, k: int) -> float:
    """8^k / prod_j Z(eps_j) along the exact flow"""
    n = 1.0
    eps = eps0
    for _ in range(k):
        result = flow_a8(eps)
        n *= 8.0 / result.Z
        eps = result.eps_out
    return n

"""
Resource Cost Model

Elementary-operation cost of the two non-topological gates for a target
circuit of N gates. One elementary operation is one braid, one pair or
quartet measurement, or one raw-ancilla preparation.

A controlled-Z consumes one |a8> purified to 1/N. One round of |a4>
distillation at level k needs one controlled-Z per unit of stabilizer
weight, each fed with an |a8> purified only to eps_k^3. Every copy count
is read off the exact |a4> and |a8> schedules, so M_tot is a step
function of N that only follows (log N)^3 on average over many levels.
"""
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd

from ..distillation.a4_flow import a4_schedule, threshold_a4
from ..distillation.reed_muller import build_rm_code
from ..protocols.gate_injection import injection_circuit
from ..protocols.ancilla_protocols import controlled_z_circuit
from ..purification.flow_equations import threshold_a8
from ..purification.purification_circuits import (
    cyclic_shift_circuit,
    dephasing_circuits,
    elementary_round_circuit,
    whirl_circuit,
)
from ..purification.schedule import schedule

logger = logging.getLogger(__name__)

ROUNDS_PER_FULL_ROUND = 7
COPIES_PER_FULL_ROUND = 8


@dataclass
class CostLevel:
    """One level of |a4> distillation"""
    k: int
    eps: float
    n: float
    a8_target: float
    a8_raw: float
    m: float
    g: float

    @property
    def M(self) -> float:
        return self.m * self.g

    def to_dict(self):
        return {"k": self.k, "eps_k": self.eps, "n_k": self.n, "a8_target": self.a8_target,
                "a8_raw": self.a8_raw, "m_k": self.m, "g_k": self.g, "M_k": self.M}


@dataclass
class CostReport:
    N: float
    eps0_a4: float
    eps0_a8: float
    cz_cost: float
    t_gate_cost: float
    levels: List[CostLevel] = field(default_factory=list)

    @property
    def delta(self) -> float:
        return 1.0 / self.N

    @property
    def M_tot(self) -> float:
        return float(sum(level.M for level in self.levels))

    @property
    def top_level_fraction(self) -> float:
        """M_d / M_tot for the highest distillation level"""
        total = self.M_tot
        return self.levels[-1].M / total if total > 0 else 1.0

    def to_dict(self):
        return {
            "N": self.N,
            "delta": self.delta,
            "eps0_a4": self.eps0_a4,
            "eps0_a8": self.eps0_a8,
            "cz_cost": self.cz_cost,
            "t_gate_cost": self.t_gate_cost,
            "M_tot": self.M_tot,
            "levels": [level.to_dict() for level in self.levels],
        }

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([level.to_dict() for level in self.levels],
                            columns=["k", "eps_k", "n_k", "a8_target", "a8_raw", "m_k", "g_k", "M_k"])


@lru_cache(maxsize=None)
def operations_per_raw_a8() -> float:
    """
    Raw preparation plus the braids and measurements of a full purification
    round, shared out over the copies it consumes.
    """
    dephasing = float(np.mean([len(c) for c in dephasing_circuits()]))
    whirl = len(whirl_circuit())
    round_ops = (COPIES_PER_FULL_ROUND * (dephasing + whirl)
                 + ROUNDS_PER_FULL_ROUND * len(elementary_round_circuit())
                 + (ROUNDS_PER_FULL_ROUND - 1) * len(cyclic_shift_circuit()))
    return 1.0 + round_ops / ROUNDS_PER_FULL_ROUND


def a8_raw_copies(eps0_a8: float, eps_target: float, threshold: Optional[float] = None) -> float:
    """Raw copies per |a8> of error eps_target: n0 of the exact |a8> schedule"""
    if eps_target >= eps0_a8:
        return 1.0
    return schedule(eps0_a8, eps_target, threshold=threshold).n0


def cost_model(N: float, eps0_a4: float, eps0_a8: float,
               threshold4: Optional[float] = None,
               threshold8: Optional[float] = None) -> CostReport:
    """
    Layered cost of Lambda(sigma^z) and Lambda(e^{i pi/4}) at gate error 1/N.

    Level k of the |a4> schedule runs g_k = n_k / 15 distillation rounds,
    each costing m_k operations of |a8> purification to eps_k^3.

    Raises:
        ValueError: if N < 2 or an initial error is not below its threshold
    """
    if N < 2:
        raise ValueError(f"Circuit size N must be at least 2, got {N}")
    threshold8 = threshold8 if threshold8 is not None else threshold_a8()
    threshold4 = threshold4 if threshold4 is not None else threshold_a4()
    if eps0_a8 >= threshold8:
        raise ValueError(f"a8 error {eps0_a8} is not below threshold {threshold8:.6f}")
    if eps0_a4 >= threshold4:
        raise ValueError(f"a4 error {eps0_a4} is not below threshold {threshold4:.6f}")

    delta = 1.0 / N
    per_raw = operations_per_raw_a8()
    cz_ops = len(controlled_z_circuit("via_a8"))
    cz_cost = per_raw * a8_raw_copies(eps0_a8, delta, threshold8) + cz_ops

    weight = build_rm_code().total_stabilizer_weight
    plan = a4_schedule(eps0_a4, delta, threshold=threshold4)
    levels = []
    for level in plan.levels[:-1]:
        target = level.eps ** 3
        raw = a8_raw_copies(eps0_a8, target, threshold8)
        m = weight * per_raw * raw
        g = level.n / plan.copies_per_round
        levels.append(CostLevel(level.k, level.eps, level.n, target, raw, m, g))

    injection_ops = len(injection_circuit("via_a8"))
    report = CostReport(N, eps0_a4, eps0_a8, cz_cost, 0.0, levels)
    report.t_gate_cost = report.M_tot + injection_ops + cz_cost
    logger.info(f"Cost model N={N:.3g}: {len(levels)} a4 levels, M_tot={report.M_tot:.4g}, "
                f"CZ cost {cz_cost:.4g}")
    return report


def cost_slope(N_values: Sequence[float], eps0_a4: float, eps0_a8: float) -> float:
    """Least-squares slope of log M_tot against log log N"""
    threshold4, threshold8 = threshold_a4(), threshold_a8()
    x, y = [], []
    for N in N_values:
        report = cost_model(float(N), eps0_a4, eps0_a8, threshold4, threshold8)
        if report.M_tot > 0:
            x.append(math.log(math.log(N)))
            y.append(math.log(report.M_tot))
    if len(x) < 2:
        raise ValueError("Need at least two sizes with nonzero cost to fit a slope")
    return float(np.polyfit(x, y, 1)[0])

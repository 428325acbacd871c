"""
Flow Equations for |a8> Purification

Distribution-level model of the elementary round and of the full round
(three stages, each fixing one syndrome bit), the threshold solver and
exact/symbolic evaluations of the flow.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy
from scipy.optimize import brentq

from .syndrome_distribution import (
    BIT_VALUES,
    N_SYNDROMES,
    SyndromeDistribution,
)

logger = logging.getLogger(__name__)

QUADRATIC_COEFFICIENT = Fraction(48, 49)

# Bit kept fixed by each stage: Gamma fixes s3, Delta fixes s2, Theta fixes s1
GAMMA = BIT_VALUES[3]
DELTA = BIT_VALUES[2]
THETA = BIT_VALUES[1]
FULL_ROUND_STAGES = (GAMMA, DELTA, THETA)


@dataclass
class FlowResult:
    """Output error rate and acceptance probability of one purification step"""
    eps_out: float
    Z: float
    output: Optional[SyndromeDistribution] = None

    def to_dict(self):
        return {"eps_out": self.eps_out, "Z": self.Z}


def stage_contraction(p: Sequence, q: Sequence, mask: int) -> List:
    """
    Unnormalized output weights of one elementary round.

    Inputs r ~ p and s ~ q are accepted iff they agree on the fixed bit;
    the output carries r ^ s on the other bits and the common fixed bit.
    Works for floats, Fractions and sympy expressions alike.
    """
    out = [0] * N_SYNDROMES
    for r in range(N_SYNDROMES):
        for s in range(N_SYNDROMES):
            if (r ^ s) & mask:
                continue
            u = (r ^ s) | (r & mask)
            out[u] = out[u] + p[r] * q[s]
    return out


def elementary_flow(d1: SyndromeDistribution, d2: SyndromeDistribution,
                    mask: int = GAMMA) -> Tuple[FlowResult, SyndromeDistribution]:
    """One elementary round on two independent copies"""
    weights = stage_contraction(d1.p, d2.p, mask)
    z = float(sum(weights))
    if z <= 0.0:
        raise ValueError("Elementary round rejects with certainty (Z = 0)")
    output = SyndromeDistribution.from_weights(weights)
    return FlowResult(output.error, z, output), output


def full_round_weights(p: Sequence) -> List:
    """Unnormalized output of the 4+2+1 tree; the weights sum to Z"""
    weights = list(p)
    for mask in FULL_ROUND_STAGES:
        weights = stage_contraction(weights, weights, mask)
    return weights


def full_round_flow(d: Union[SyndromeDistribution, float]) -> FlowResult:
    """
    Full round on eight copies of d (a bimodal distribution or its error rate).

    Returns:
        FlowResult with eps_out = sum of nonzero-syndrome weights / Z
    """
    if not isinstance(d, SyndromeDistribution):
        d = SyndromeDistribution.bimodal(float(d))
    weights = full_round_weights(d.p)
    z = float(sum(weights))
    if z <= 0.0:
        raise ValueError("Full round rejects with certainty (Z = 0)")
    eps_out = float(sum(weights[1:])) / z
    return FlowResult(eps_out, z, SyndromeDistribution.from_weights(weights))


def flow_a8(eps: float) -> FlowResult:
    return full_round_flow(SyndromeDistribution.bimodal(eps))


def acceptance(eps: float) -> float:
    return flow_a8(eps).Z


def quadratic_approximation(eps: float) -> float:
    """Leading-order flow 48/49 eps^2"""
    return float(QUADRATIC_COEFFICIENT) * eps * eps


def _bimodal_exact(eps) -> List:
    return [1 - eps] + [eps / 7] * 7


def full_round_flow_exact(eps) -> Tuple[sympy.Rational, sympy.Rational]:
    """(eps_out, Z) in exact rational arithmetic for rational eps"""
    eps = sympy.Rational(eps)
    weights = full_round_weights(_bimodal_exact(eps))
    z = sympy.Rational(sum(weights))
    if z == 0:
        raise ValueError("Full round rejects with certainty (Z = 0)")
    return sympy.Rational(sum(weights[1:])) / z, z


def flow_series(order: int = 3) -> Dict[str, List[sympy.Rational]]:
    """
    Taylor coefficients of eps_out(eps) and Z(eps) around eps = 0.

    Returns:
        {'eps_out': [c0, c1, ...], 'Z': [z0, z1, ...]} up to eps^order
    """
    eps = sympy.Symbol('eps')
    weights = [sympy.expand(w) for w in full_round_weights(_bimodal_exact(eps))]
    z = sympy.expand(sum(weights))
    eps_out = sum(weights[1:]) / z
    out_series = sympy.series(eps_out, eps, 0, order + 1).removeO()
    z_series = sympy.series(z, eps, 0, order + 1).removeO()
    return {
        "eps_out": [sympy.Rational(out_series.coeff(eps, k)) for k in range(order + 1)],
        "Z": [sympy.Rational(z_series.coeff(eps, k)) for k in range(order + 1)],
    }


def stage_bit_errors(d: Union[SyndromeDistribution, float]) -> List[Dict[str, float]]:
    """
    Per-stage marginal bit errors of the normalized distribution after each
    stage of the full round.
    """
    if not isinstance(d, SyndromeDistribution):
        d = SyndromeDistribution.bimodal(float(d))
    records = []
    current = d
    for name, mask in zip(("gamma", "delta", "theta"), FULL_ROUND_STAGES):
        result, current = elementary_flow(current, current, mask)
        records.append({
            "stage": name,
            "Z": result.Z,
            "eps": current.error,
            "s1": current.bit_error(1),
            "s2": current.bit_error(2),
            "s3": current.bit_error(3),
        })
    return records


def threshold_a8(bracket: Tuple[float, float] = (0.05, 0.45), xtol: float = 1e-6) -> float:
    """Nontrivial fixed point eps_out(delta8) = delta8"""
    low, high = bracket
    root = brentq(lambda e: flow_a8(e).eps_out - e, low, high, xtol=xtol)
    logger.info(f"a8 purification threshold: {root:.6f}")
    return float(root)


def flow_curve(eps_min: float, eps_max: float, steps: int) -> np.ndarray:
    """Rows (eps, eps_out, Z) on an even grid"""
    if steps < 2:
        raise ValueError(f"Need at least two grid points, got {steps}")
    grid = np.linspace(eps_min, eps_max, steps)
    rows = []
    for eps in grid:
        result = flow_a8(float(eps))
        rows.append((float(eps), result.eps_out, result.Z))
    return np.array(rows)

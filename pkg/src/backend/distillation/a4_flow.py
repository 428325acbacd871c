"""
|a4> Distillation Flow

Exact output error and acceptance of one distillation round on fifteen
dephased |a4> copies, the threshold and the recursive schedule.
"""
import logging
from dataclasses import dataclass
from itertools import product
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from ..majorana.pauli_string import hermitian_monomial
from ..oracle.syndrome_basis import a4_state
from ..purification.flow_equations import FlowResult
from ..purification.schedule import PurificationSchedule, build_schedule
from .reed_muller import N_QUBITS, RMCode, build_rm_code

logger = logging.getLogger(__name__)


@dataclass
class A4FlowResult:
    eps_out: float
    p_s: float

    def to_dict(self):
        return {"eps_out": self.eps_out, "p_s": self.p_s}


def projection_factor(code: Optional[RMCode] = None) -> float:
    """
    Acceptance of fifteen clean copies without error correction, one half
    per independent sigma^z stabilizer.
    """
    code = code if code is not None else build_rm_code()
    return 2.0 ** -len(code.z_stabilizers)


def _pattern_sums(eps: float, code: RMCode) -> Tuple[float, float]:
    """Probability mass of benign and logical undetected patterns"""
    weights = np.arange(N_QUBITS + 1)
    per_weight = eps ** weights * (1.0 - eps) ** (N_QUBITS - weights)
    benign = float(np.dot(code.weight_enumerator["benign"], per_weight))
    logical = float(np.dot(code.weight_enumerator["logical"], per_weight))
    return benign, logical


def exact_flow_a4(eps: float, error_correction: bool = False) -> A4FlowResult:
    """
    One distillation round with per-copy sigma^z error probability eps.

    Without error correction the round is accepted only on the trivial
    outcome of all fourteen stabilizer measurements, which on clean copies
    happens with probability projection_factor(). With error correction the random
    outcomes produced by the projection are absorbed into a Pauli frame and
    only genuine sigma^z syndromes reject.
    """
    if not 0.0 <= eps <= 0.5:
        raise ValueError(f"Error rate must lie in [0, 0.5], got {eps}")
    code = build_rm_code()
    benign, logical = _pattern_sums(eps, code)
    undetected = benign + logical
    p_s = undetected if error_correction else projection_factor(code) * undetected
    return A4FlowResult(logical / undetected, p_s)


def acceptance_stabilizer_sum(eps: float) -> float:
    """
    Independent p_s oracle: Tr(Pi rho^{x15}) = 2^-14 sum_S prod_j Tr(rho S_j)
    over the 2^14 stabilizer elements X(a) Z(b).
    """
    code = build_rm_code()
    c = (1.0 - 2.0 * eps) / np.sqrt(2.0)
    # Single-copy expectations <X>, <Z>, <XZ> = -i<Y> of the dephased |a4>
    factor = {(0, 0): 1.0, (1, 0): c, (0, 1): 0.0, (1, 1): -1j * c}

    def span(rows):
        vectors = [np.zeros(N_QUBITS, dtype=np.uint8)]
        for row in rows:
            vectors += [v ^ row for v in vectors]
        return vectors

    total = 0.0 + 0.0j
    x_span = span(code.x_stabilizers)
    z_span = span(code.z_stabilizers)
    for a, b in product(x_span, z_span):
        if np.any(b & ~a & 1):
            continue
        term = 1.0 + 0.0j
        for xa, zb in zip(a, b):
            term *= factor[(int(xa), int(zb))]
        total += term
    return float(total.real) * 2.0 ** -(len(code.x_stabilizers) + len(code.z_stabilizers))


def threshold_a4(bracket: Tuple[float, float] = (0.05, 0.2), xtol: float = 1e-6) -> float:
    low, high = bracket
    root = brentq(lambda e: exact_flow_a4(e).eps_out - e, low, high, xtol=xtol)
    logger.info(f"a4 distillation threshold: {root:.6f}")
    return float(root)


def _as_flow(error_correction: bool):
    def flow(eps: float) -> FlowResult:
        result = exact_flow_a4(eps, error_correction)
        return FlowResult(result.eps_out, result.p_s)
    return flow


def a4_schedule(eps0: float, eps_target: float, error_correction: bool = True,
                threshold: Optional[float] = None) -> PurificationSchedule:
    """Recursive distillation schedule with fifteen copies per round"""
    threshold = threshold if threshold is not None else threshold_a4()
    return build_schedule(eps0, eps_target, _as_flow(error_correction), threshold,
                          copies_per_round=N_QUBITS)


def dephasing_flip_overlap() -> float:
    """|<a4| sigma^z |a4>|^2, zero when sigma^z maps |a4> to its complement"""
    state = a4_state()
    flipped = state.apply_pauli(hermitian_monomial((1, 2), state.n_qubits))
    return float(abs(np.vdot(state.amplitudes, flipped.amplitudes)) ** 2)


def flow_curve_a4(eps_values, error_correction: bool = False) -> np.ndarray:
    """Rows (eps, eps_out, p_s)"""
    rows = []
    for eps in eps_values:
        result = exact_flow_a4(float(eps), error_correction)
        rows.append((float(eps), result.eps_out, result.p_s))
    return np.array(rows)

"""Dephasing and syndrome whirling at the distribution level"""
from typing import Sequence, Union

import numpy as np

from .syndrome_distribution import N_SYNDROMES, SyndromeDistribution


def dephase(overlaps: Union[SyndromeDistribution, Sequence[float]]) -> SyndromeDistribution:
    """
    Diagonal syndrome mixture with the given overlaps p(s) = <Psi_s|rho|Psi_s>.

    Idempotent: a SyndromeDistribution is returned unchanged.
    """
    if isinstance(overlaps, SyndromeDistribution):
        return SyndromeDistribution(overlaps.p.copy())
    return SyndromeDistribution(np.asarray(overlaps, dtype=float))


def whirl(d: SyndromeDistribution) -> SyndromeDistribution:
    """Average over the 7-cycle of nonzero syndromes; p(0) is kept"""
    p = np.full(N_SYNDROMES, (1.0 - d.p[0]) / 7.0)
    p[0] = d.p[0]
    return SyndromeDistribution(p)

"""Entropy-rate formulas from stationary weights."""

import logging
import math
from typing import List

from .mixed_states import gap_from_forward
from .words import iter_word_tables
from ..errors import UnifilarityError
from ..toolkit.hmm import MachineSpec, is_unifilar
from ..toolkit.math import Enclosure

logger = logging.getLogger(__name__)


def _weighted_state_entropy(spec: MachineSpec, tol: float) -> Enclosure:
    """sum_sigma pi_sigma h_sigma over the truncated support; the tail may carry up to lg|X| each."""
    support = spec.support(min(max(tol, 1e-15), 0.5))
    named = math.fsum(m * spec.state_entropy(k) for k, m in support.items())
    return Enclosure(named, named + support.tail * spec.alphabet.log_size)


def generic_rate_lower_bound(spec: MachineSpec, tol: float = 1e-10) -> Enclosure:
    """Enclosure of sum_sigma pi_sigma h_sigma.

    For any stationary HMM this is a lower bound on h_mu (and so on every
    h_mu(t)); for exact unifilar machines it is h_mu itself.
    """
    if spec.has_entropy_rate:
        return spec.entropy_rate(tol)
    return _weighted_state_entropy(spec, tol)


def unifilar_entropy_rate(spec: MachineSpec, tol: float = 1e-10) -> Enclosure:
    """h_mu = sum_sigma pi_sigma h_sigma of a unifilar machine.

    Raises:
        UnifilarityError: If a sampled state has two edges sharing a symbol
    """
    if not is_unifilar(spec):
        raise UnifilarityError(f"{spec.name} is not unifilar; sum pi h is only a lower bound")
    return generic_rate_lower_bound(spec, tol)


def alternative_rate(spec: MachineSpec, t: int, mass_tol: float = 1e-6,
                     reduce: bool = True) -> Enclosure:
    """sum_{w in L_t} P(w) htilde_w.

    Averaging the per-state entropies over the mixed states of length-t words
    returns the stationary average for every t.
    """
    table = None
    for table in iter_word_tables(spec, t, mass_tol, reduce=reduce):
        pass
    lower: List[float] = []
    upper: List[float] = []
    for word, p, count in table.items():
        _, htilde_w = gap_from_forward(spec, table.forward[word])
        lower.append(count * p * htilde_w.lower)
        upper.append(count * p * htilde_w.upper)
    return Enclosure(math.fsum(lower), math.fsum(upper) + table.tail * spec.alphabet.log_size)

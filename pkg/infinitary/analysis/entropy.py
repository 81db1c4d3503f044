"""Block entropies, entropy-rate approximations and excess-entropy partial sums."""

from dataclasses import dataclass, field
import logging
from typing import Dict, List, Optional

import numpy as np
import pandas as pd
from scipy.special import entr

from .mixed_states import table_gap_sum
from .words import DEFAULT_MAX_WORDS, WordTable, iter_word_tables
from ..errors import ParamError
from ..toolkit.hmm import MachineSpec
from ..toolkit.math import LN2, Enclosure, binary_entropy, entropy_bits

logger = logging.getLogger(__name__)


def block_entropy(table: WordTable) -> Enclosure:
    """Enclosure of H[X^t] from a word table.

    With tau the unenumerated mass, each true P(w) lies in [p_w, p_w + tau],
    so concavity of -x lg x bounds each named term from below by its smaller
    endpoint value. Subadditivity bounds the contribution of the unenumerated
    mass from above by tau t lg|X| + h_b(tau).
    """
    tau = table.tail + table.absorbed + table.excluded
    if not table.entries:
        lower_value = 0.0
        named = 0.0
    else:
        p = np.fromiter(table.entries.values(), dtype=float, count=len(table.entries))
        m = np.fromiter((table.count(w) for w in table.entries), dtype=float,
                        count=len(table.entries))
        terms = entr(p)
        named = float(np.dot(m, terms)) / LN2
        if tau > 0.0:
            shifted = entr(np.minimum(p + tau, 1.0))
            lower_value = float(np.dot(m, np.minimum(terms, shifted))) / LN2
        else:
            lower_value = named
    log_size = np.log2(table.alphabet_size) if table.alphabet_size > 1 else 0.0
    cap = table.length * log_size
    upper_value = named + tau * cap + binary_entropy(min(tau, 1.0))
    return Enclosure(min(lower_value, cap), min(upper_value, cap))


@dataclass
class EntropyCurve:
    """Block entropies and derived quantities for t = 0..t_max.

    ``rate[t]`` is h_mu(t) = H[X^t] - H[X^(t-1)] (t >= 1). ``gap_sum[t]`` is the
    gap sum over words of length t - 1, which equals h_mu(t) - h_mu for
    unifilar machines. Excess-entropy partial sums need an entropy-rate
    enclosure and are empty without one.
    """

    machine: str
    t_max: int
    alphabet_size: int
    block: Dict[int, Enclosure] = field(default_factory=dict)
    rate: Dict[int, Enclosure] = field(default_factory=dict)
    gap_sum: Dict[int, Enclosure] = field(default_factory=dict)
    entropy_rate: Optional[Enclosure] = None
    excess_block: Dict[int, Enclosure] = field(default_factory=dict)
    excess_sum: Dict[int, Enclosure] = field(default_factory=dict)

    def excess(self, t: int) -> Optional[Enclosure]:
        """Partial excess entropy at t: the tighter of the two equivalent forms."""
        if t not in self.excess_block:
            return None
        a, b = self.excess_block[t], self.excess_sum[t]
        lower, upper = max(a.lower, b.lower), min(a.upper, b.upper)
        if lower <= upper:
            return Enclosure(lower, upper)
        return Enclosure.hull([a, b])

    def to_frame(self) -> pd.DataFrame:
        """One row per t >= 1 with the columns written by the curves command."""
        rows = []
        for t in range(1, self.t_max + 1):
            h = self.block[t]
            rate = self.rate[t]
            excess = self.excess(t)
            gap = self.gap_sum.get(t)
            rows.append(
                {
                    "t": t,
                    "H_lower": h.lower,
                    "H_upper": h.upper,
                    "hmu_t_lower": rate.lower,
                    "hmu_t_upper": rate.upper,
                    "E_partial_lower": excess.lower if excess is not None else np.nan,
                    "E_partial_upper": excess.upper if excess is not None else np.nan,
                    "gap_sum_lower": gap.lower if gap is not None else np.nan,
                }
            )
        columns = ["t", "H_lower", "H_upper", "hmu_t_lower", "hmu_t_upper",
                   "E_partial_lower", "E_partial_upper", "gap_sum_lower"]
        return pd.DataFrame(rows, columns=columns)


def hmu_curve(
    spec: MachineSpec,
    t_max: int,
    mass_tol: float = 1e-6,
    reduce: bool = True,
    entropy_rate: Optional[Enclosure] = None,
    rate_tol: float = 1e-10,
    with_gaps: bool = True,
    max_words: int = DEFAULT_MAX_WORDS,
) -> EntropyCurve:
    """Entropy curve up to t_max.

    Args:
        spec: Machine
        t_max: Longest block length (>= 1)
        mass_tol: Unenumerated mass allowed per table
        reduce: Merge words with equal forward vectors
        entropy_rate: Enclosure of h_mu; taken from the machine when omitted
        rate_tol: Width requested from the machine's entropy-rate rule
        with_gaps: Also compute the gap sums from the same tables
        max_words: Per-level word budget

    Returns:
        EntropyCurve

    Raises:
        ParamError: If t_max < 1
        BudgetError: If a table exceeds max_words
    """
    if t_max < 1:
        raise ParamError("t_max must be at least 1")
    if entropy_rate is None and spec.has_entropy_rate:
        entropy_rate = spec.entropy_rate(rate_tol)

    size = spec.alphabet.size
    log_size = spec.alphabet.log_size
    curve = EntropyCurve(spec.name, t_max, size, entropy_rate=entropy_rate)
    previous: Optional[WordTable] = None
    for table in iter_word_tables(spec, t_max, mass_tol, reduce=reduce, max_words=max_words,
                                  keep_forward=with_gaps):
        t = table.length
        curve.block[t] = block_entropy(table)
        if previous is not None:
            curve.rate[t] = (curve.block[t] - curve.block[t - 1]).clip(0.0, log_size)
            if with_gaps:
                curve.gap_sum[t] = table_gap_sum(spec, previous)
        previous = table
        logger.debug("%s: H[X^%d] in %s", spec.name, t, curve.block[t])

    if entropy_rate is not None:
        running = Enclosure.point(0.0)
        for t in range(1, t_max + 1):
            curve.excess_block[t] = curve.block[t] - entropy_rate * t
            running = running + (curve.rate[t] - entropy_rate)
            curve.excess_sum[t] = running
    return curve


def excess_entropy_estimate(spec: MachineSpec, t: int, mass_tol: float = 1e-6,
                            reduce: bool = True) -> Enclosure:
    """I[X^t ; X'^t] = 2 H[X^t] - H[X^2t], the mutual information between adjacent t-blocks."""
    if t < 1:
        raise ParamError("t must be at least 1")
    blocks: Dict[int, Enclosure] = {}
    for table in iter_word_tables(spec, 2 * t, mass_tol, reduce=reduce, keep_forward=False):
        if table.length in (t, 2 * t):
            blocks[table.length] = block_entropy(table)
    return (blocks[t] * 2 - blocks[2 * t]).clip(0.0)


def stationary_entropy(spec: MachineSpec, eps: float = 1e-6) -> Enclosure:
    """Enclosure of H[pi], the entropy of the stationary state distribution.

    Named weights give a lower bound (lumping and truncation only lose
    entropy); the upper bound is finite only for an exact machine whose
    support has no tail.
    """
    support = spec.support(eps)
    lower = entropy_bits(list(support.masses.values()))
    if support.tail == 0.0 and spec.underlying is None:
        return Enclosure.point(lower)
    return Enclosure(lower, float("inf"))


def block_entropies(spec: MachineSpec, t_max: int, mass_tol: float = 1e-6,
                    reduce: bool = True) -> List[Enclosure]:
    """H[X^t] for t = 0..t_max."""
    return [
        block_entropy(table)
        for table in iter_word_tables(spec, t_max, mass_tol, reduce=reduce, keep_forward=False)
    ]

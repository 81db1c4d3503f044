"""Mixed states, entropy gaps and observer synchronisation.

For a word w the mixed state phi(w) is the conditional distribution over
hidden states after observing w. Two next-symbol entropies are attached to
it:

    h_w        = H[X_0 | X_{-t:0} = w]              (entropy of the averaged prediction)
    htilde_w   = sum_sigma phi(w)_sigma h_sigma     (average of per-state entropies)

By concavity h_w >= htilde_w, and h_mu(t+1) - h_mu = sum_{w in L_t} P(w) (h_w - htilde_w)
for unifilar machines.
"""

from dataclasses import dataclass
import logging
import math
from typing import List, Tuple

import numpy as np
import pandas as pd

from .words import DEFAULT_MAX_WORDS, WordTable, iter_word_tables, word_table
from ..errors import UnifilarityError, ZeroProbabilityError
from ..toolkit.hmm import MachineSpec, SparseDistribution, forward, is_unifilar
from ..toolkit.math import Enclosure, continuity_radius, entropy_bits

logger = logging.getLogger(__name__)

SYNC_THRESHOLD = 1e-9


@dataclass
class MixedState:
    """Conditional state distribution phi(w) with the certified word probability."""

    word: str
    distribution: SparseDistribution
    probability: Enclosure

    def __post_init__(self):
        total = self.distribution.total
        if abs(total - 1.0) > 1e-10:
            raise ValueError(f"mixed state mass must be 1, got {total}")

    @property
    def support_size(self) -> int:
        return len(self.distribution)


def mixed_state(spec: MachineSpec, w, eps: float = 1e-9) -> MixedState:
    """phi(w) = pi T^(w) / ||pi T^(w)||_1.

    Raises:
        ZeroProbabilityError: If P(w) cannot be certified above eps
    """
    word = spec.parse(w)
    v = forward(spec, word, eps)
    named = v.named_mass
    if word:
        probability = Enclosure(named, min(1.0, named + v.tail))
    else:
        probability = Enclosure.point(1.0)
    if named <= 0.0 or probability.upper <= eps:
        raise ZeroProbabilityError(
            f"P({word!r}) <= {probability.upper:.3g} cannot be certified above {eps:g}"
        )
    return MixedState(word, v.scaled(1.0 / v.total), probability)


def is_synchronized(spec: MachineSpec, dist: SparseDistribution,
                    threshold: float = SYNC_THRESHOLD) -> bool:
    """Whether a (possibly unnormalised) vector is a point mass on one hidden state."""
    key, mass = dist.argmax()
    if key is None or not spec.is_atomic(key):
        return False
    total = dist.total
    return total - mass <= threshold * total


def gap_from_forward(spec: MachineSpec, v: SparseDistribution) -> Tuple[Enclosure, Enclosure]:
    """(h_w, htilde_w) for the word whose forward vector is v.

    Tail mass of v is an unknown part of the mixed state at total variation
    distance at most tail / total from the named part, which widens h_w by the
    entropy continuity radius and htilde_w by that distance times lg|X|.
    """
    named = v.named_mass
    if named <= 0.0:
        raise ZeroProbabilityError("forward vector carries no named mass")
    size = spec.alphabet.size
    log_size = spec.alphabet.log_size
    prediction = np.zeros(size)
    averaged = 0.0
    for key, mass in v.items():
        weight = mass / named
        for edge in spec.edges(key):
            prediction[edge.symbol.code] += weight * edge.probability
        averaged += weight * spec.state_entropy(key)
    h = entropy_bits(prediction)
    distance = v.tail / (named + v.tail)
    if distance == 0.0:
        return Enclosure.point(h), Enclosure.point(averaged)
    radius = continuity_radius(distance, size)
    h_w = Enclosure(h - radius, h + radius).clip(0.0, log_size)
    htilde_w = Enclosure(averaged - distance * log_size, averaged + distance * log_size)
    return h_w, htilde_w.clip(0.0, log_size)


def entropy_gap(spec: MachineSpec, w, eps: float = 1e-9) -> Tuple[Enclosure, Enclosure]:
    """(h_w, htilde_w) as enclosures."""
    word = spec.parse(w)
    state = mixed_state(spec, word, eps)
    return gap_from_forward(spec, state.distribution)


def _require_unifilar(spec: MachineSpec) -> None:
    if not is_unifilar(spec):
        raise UnifilarityError(f"{spec.name} is not unifilar")


def _absorption_slack(spec: MachineSpec) -> float:
    # largest gap of a word accepted as synchronised
    size = spec.alphabet.size
    return continuity_radius(SYNC_THRESHOLD, size) + SYNC_THRESHOLD * spec.alphabet.log_size


def table_gap_sum(spec: MachineSpec, table: WordTable) -> Enclosure:
    """sum_w P(w)(h_w - htilde_w) over a table with forward vectors.

    The lower bound uses enumerated mass only (every term is nonnegative); the
    upper bound charges lg|X| for all unenumerated mass and the absorption
    slack for absorbed words.
    """
    lower: List[float] = []
    upper: List[float] = []
    for word, p, count in table.items():
        h_w, htilde_w = gap_from_forward(spec, table.forward[word])
        lower.append(count * p * max(0.0, h_w.lower - htilde_w.upper))
        upper.append(count * p * max(0.0, h_w.upper - htilde_w.lower))
    log_size = spec.alphabet.log_size
    extra = (table.tail + table.excluded) * log_size + table.absorbed * _absorption_slack(spec)
    return Enclosure(math.fsum(lower), math.fsum(upper) + extra)


def entropy_gap_curve(spec: MachineSpec, t_max: int, mass_tol: float = 1e-6,
                      reduce: bool = True, max_words: int = DEFAULT_MAX_WORDS) -> List[Enclosure]:
    """Gap sums over L_t for t = 0..t_max.

    Synchronised words have zero gap from then on when the machine is
    unifilar, so they are absorbed rather than expanded.
    """
    spec.check_horizon(t_max + 1)
    absorb = is_synchronized if is_unifilar(spec) else None
    return [
        table_gap_sum(spec, table)
        for table in iter_word_tables(
            spec, t_max, mass_tol, reduce=reduce, absorb=absorb, max_words=max_words
        )
    ]


def entropy_gap_sum(spec: MachineSpec, t: int, mass_tol: float = 1e-6, reduce: bool = True,
                    max_words: int = DEFAULT_MAX_WORDS) -> Enclosure:
    """Enclosure of sum_{w in L_t} P(w)(h_w - htilde_w), which is h_mu(t+1) - h_mu."""
    return entropy_gap_curve(spec, t, mass_tol, reduce, max_words)[t]


def gap_terms(spec: MachineSpec, t: int, mass_tol: float = 1e-6, reduce: bool = True,
              symbols=None) -> pd.DataFrame:
    """Per-word (or per-class) P(w), h_w and htilde_w for length-t words."""
    spec.check_horizon(t + 1)
    table = word_table(spec, t, mass_tol, reduce=reduce, symbols=symbols)
    rows = []
    for word, p, count in table.items():
        h_w, htilde_w = gap_from_forward(spec, table.forward[word])
        rows.append(
            {
                "word": word,
                "multiplicity": count,
                "p": p,
                "h_lower": h_w.lower,
                "h_upper": h_w.upper,
                "htilde_lower": htilde_w.lower,
                "htilde_upper": htilde_w.upper,
                "gap_lower": max(0.0, h_w.lower - htilde_w.upper),
            }
        )
    columns = ["word", "multiplicity", "p", "h_lower", "h_upper", "htilde_lower",
               "htilde_upper", "gap_lower"]
    return pd.DataFrame(rows, columns=columns)


def sync_curve(spec: MachineSpec, t_max: int, mass_tol: float = 1e-6, reduce: bool = True,
               max_words: int = DEFAULT_MAX_WORDS) -> List[Enclosure]:
    """P(NS_t) for t = 0..t_max, NS_t being the nonsynchronising length-t words.

    Synchronised words are absorbed as they appear; the upper bound is one
    minus the absorbed mass and so never increases with t.

    Raises:
        UnifilarityError: If the machine is not unifilar
    """
    _require_unifilar(spec)
    start = spec.support(mass_tol / 2.0)
    if is_synchronized(spec, start):
        return [Enclosure.point(0.0)] * (t_max + 1)
    curve: List[Enclosure] = []
    for table in iter_word_tables(
        spec, t_max, mass_tol, reduce=reduce, max_words=max_words, keep_forward=False,
        absorb=is_synchronized,
    ):
        upper = min(1.0, 1.0 - table.absorbed)
        curve.append(Enclosure(min(table.mass, upper), upper))
    return curve


def sync_probability(spec: MachineSpec, t: int, mass_tol: float = 1e-6,
                     reduce: bool = True) -> Enclosure:
    """Enclosure of P(NS_t)."""
    return sync_curve(spec, t, mass_tol, reduce)[t]


def gap_bound_from_sync(spec: MachineSpec, t: int, mass_tol: float = 1e-6) -> Enclosure:
    """lg|X| P(NS_t), an upper bound on the gap sum over L_t."""
    return sync_probability(spec, t, mass_tol).scale(spec.alphabet.log_size)

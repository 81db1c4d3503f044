"""Sparse forward-algorithm algebra.

Word probabilities are P(w) = || pi T^(w_1) ... T^(w_t) ||_1, evaluated on
sparse vectors over lazily expanded states.
"""

import logging
from typing import Dict

from .definition import MachineSpec, SymbolLike, WordLike
from .distribution import SparseDistribution
from ...errors import BudgetError
from ..math import Enclosure

logger = logging.getLogger(__name__)


def apply_symbol(dist: SparseDistribution, x: SymbolLike, spec: MachineSpec) -> SparseDistribution:
    """One factor dist T^(x) of the forward product."""
    code = spec.alphabet.symbol(x).code
    out: Dict = {}
    for key, mass in dist.masses.items():
        for edge in spec.edges(key):
            if edge.symbol.code == code:
                out[edge.target] = out.get(edge.target, 0.0) + mass * edge.probability
    return SparseDistribution(out, dist.tail * spec.tail_symbol_bound(code))


def propagate(dist: SparseDistribution, spec: MachineSpec) -> Dict[int, SparseDistribution]:
    """All one-symbol successors of a forward vector in one pass.

    Symbols whose successor carries neither named nor tail mass are omitted.
    """
    buckets: Dict[int, Dict] = {}
    for key, mass in dist.masses.items():
        for edge in spec.edges(key):
            bucket = buckets.setdefault(edge.symbol.code, {})
            bucket[edge.target] = bucket.get(edge.target, 0.0) + mass * edge.probability
    children: Dict[int, SparseDistribution] = {}
    for symbol in spec.alphabet:
        code = symbol.code
        tail = dist.tail * spec.tail_symbol_bound(code)
        masses = buckets.get(code, {})
        if masses or tail > 0.0:
            children[code] = SparseDistribution(masses, tail)
    return children


def step(dist: SparseDistribution, spec: MachineSpec) -> SparseDistribution:
    """One unconditioned step dist T with T = sum_x T^(x)."""
    out: Dict = {}
    for key, mass in dist.masses.items():
        for edge in spec.edges(key):
            out[edge.target] = out.get(edge.target, 0.0) + mass * edge.probability
    return SparseDistribution(out, dist.tail)


def forward(spec: MachineSpec, w: WordLike, eps: float) -> SparseDistribution:
    """Unnormalised forward vector pi_eps T^(w)."""
    word = spec.parse(w)
    spec.check_horizon(len(word))
    dist = spec.support(eps)
    for glyph in word:
        dist = apply_symbol(dist, glyph, spec)
        if dist.is_zero():
            break
    return dist


def word_probability(spec: MachineSpec, w: WordLike, eps: float) -> Enclosure:
    """Enclosure of P(w); the width is the surviving truncation tail.

    Raises:
        BudgetError: If the support enumerator stopped at its state cap and the
            tail reaching w is still heavier than eps
    """
    word = spec.parse(w)
    if not word:
        return Enclosure.point(1.0)
    dist = forward(spec, word, eps)
    if dist.tail > eps:
        raise BudgetError(
            f"{spec.name}: truncation tail {dist.tail:.3g} for {word!r} "
            f"exceeds eps={eps:g}; raise the state cap or use a pooled presentation"
        )
    named = dist.named_mass
    return Enclosure(named, min(1.0, named + dist.tail))


def step_stationarity_residual(spec: MachineSpec, eps: float) -> float:
    """|| pi_eps T - pi_eps ||_1 on stationary classes of the truncated support."""
    pi = spec.support(eps)
    stepped = step(pi, spec)
    residual = stepped.project(spec.stationary_class).l1_distance(
        pi.project(spec.stationary_class)
    )
    logger.debug("stationarity residual of %s at eps=%g: %.3g", spec.name, eps, residual)
    return residual

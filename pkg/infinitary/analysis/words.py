"""Breadth-first enumeration of word tables.

A word table holds the length-t words of the process language together with
their probabilities P(w) = ||pi T^(w)||_1. Levels are built from the previous
one by propagating forward vectors, so a single pass yields every length up
to t_max.
"""

from dataclasses import dataclass, field
import logging
import math
from typing import Callable, Dict, Hashable, Iterator, List, Optional, Sequence, Tuple

from ..errors import BudgetError, ParamError
from ..toolkit.hmm import MachineSpec, SparseDistribution, propagate

logger = logging.getLogger(__name__)

DEFAULT_MAX_WORDS = 5_000_000

Absorb = Callable[[MachineSpec, SparseDistribution], bool]


@dataclass
class WordTable:
    """Length-t marginal of a process.

    ``entries`` maps a word (glyph string) to its certified named probability.
    When the table was reduced, each entry stands for ``multiplicity[w]`` words
    with identical forward vectors up to the machine's relabelling, so the
    enumerated mass is sum_w multiplicity[w] * entries[w].

    Mass accounting: enumerated + tail + absorbed + excluded = 1, where tail
    is the truncation and pruning allowance, ``absorbed`` the mass of words
    removed by an absorption rule and ``excluded`` the mass of words leaving
    a restricted alphabet.
    """

    length: int
    entries: Dict[str, float]
    tail: float = 0.0
    alphabet_size: int = 2
    multiplicity: Dict[str, int] = field(default_factory=dict)
    forward: Dict[str, SparseDistribution] = field(default_factory=dict)
    absorbed: float = 0.0
    excluded: float = 0.0
    reduced: bool = False

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("word length must be nonnegative")
        if self.tail < 0.0:
            raise ValueError("tail mass must be nonnegative")

    def __len__(self) -> int:
        return len(self.entries)

    def count(self, word: str) -> int:
        return self.multiplicity.get(word, 1)

    @property
    def n_words(self) -> int:
        """Number of words represented (classes expanded by multiplicity)."""
        return sum(self.count(w) for w in self.entries)

    @property
    def mass(self) -> float:
        return math.fsum(self.count(w) * p for w, p in self.entries.items())

    def items(self) -> Iterator[Tuple[str, float, int]]:
        """(word, probability, multiplicity) in insertion order."""
        for word, p in self.entries.items():
            yield word, p, self.count(word)

    def probability(self, word: str) -> float:
        """Named probability of a word that is itself a table entry (0 if absent)."""
        return self.entries.get(word, 0.0)

    def expanded(self) -> Dict[str, float]:
        """Entries of an unreduced table; raises for reduced tables."""
        if self.reduced:
            raise ValueError("a reduced table lists class representatives only")
        return dict(self.entries)


@dataclass
class _Node:
    word: str
    dist: SparseDistribution
    mass: float
    multiplicity: int


def _canonical(spec: MachineSpec, dist: SparseDistribution) -> Hashable:
    sig = dist.signature()
    if spec.relabel is not None:
        sig = min(sig, dist.relabeled(spec.relabel).signature())
    return sig


def _prune(nodes: List[_Node], budget: float) -> Tuple[List[_Node], float]:
    """Drop the lightest nodes while their combined mass stays within budget."""
    if budget <= 0.0 or not nodes:
        return nodes, 0.0
    order = sorted(range(len(nodes)), key=lambda k: nodes[k].mass * nodes[k].multiplicity)
    dropped = set()
    spent = 0.0
    for k in order:
        cost = nodes[k].mass * nodes[k].multiplicity
        if spent + cost > budget:
            break
        spent += cost
        dropped.add(k)
    if not dropped:
        return nodes, 0.0
    return [n for k, n in enumerate(nodes) if k not in dropped], spent


def iter_word_tables(
    spec: MachineSpec,
    t_max: int,
    mass_tol: float = 1e-6,
    reduce: bool = False,
    absorb: Optional[Absorb] = None,
    symbols: Optional[Sequence[int]] = None,
    max_words: int = DEFAULT_MAX_WORDS,
    keep_forward: bool = True,
    start: Optional[SparseDistribution] = None,
) -> Iterator[WordTable]:
    """Yield word tables for t = 0, 1, ..., t_max.

    Half of ``mass_tol`` goes to truncating the stationary vector; the rest
    (less whatever the truncation did not use) is spread over the levels as a
    pruning allowance. Unused allowance carries forward.

    Args:
        spec: Machine
        t_max: Longest word length
        mass_tol: Total probability allowed outside the enumerated entries
        reduce: Merge words whose forward vectors agree (up to ``spec.relabel``)
        absorb: Predicate on forward vectors; absorbed words leave the frontier
        symbols: Restrict extensions to these symbol codes
        max_words: Budget on entries per level
        keep_forward: Store forward vectors on the tables
        start: Initial vector (defaults to the truncated stationary vector)

    Yields:
        WordTable per length

    Raises:
        ParamError: If t_max is negative, mass_tol is outside (0, 1) or words
            of length t_max lie beyond the presentation's horizon
        BudgetError: If a level holds more than max_words entries
    """
    if t_max < 0:
        raise ParamError("t_max must be nonnegative")
    if not 0.0 < mass_tol < 1.0:
        raise ParamError(f"mass_tol must lie in (0, 1), got {mass_tol}")
    spec.check_horizon(t_max)

    dist = start if start is not None else spec.support(mass_tol / 2.0)
    allowance = max(0.0, mass_tol - dist.tail)
    per_level = allowance / t_max if t_max > 0 else 0.0
    tail = dist.tail
    absorbed = 0.0
    excluded = 0.0
    allowed = None if symbols is None else set(symbols)
    size = spec.alphabet.size
    glyphs = spec.alphabet.glyphs

    nodes = [_Node("", dist, 1.0 - dist.tail if start is None else dist.named_mass, 1)]
    yield WordTable(
        0,
        {"": 1.0 if start is None else dist.named_mass},
        0.0,
        size,
        {},
        {"": dist} if keep_forward else {},
        reduced=reduce,
    )

    carry = 0.0
    for t in range(1, t_max + 1):
        children: List[_Node] = []
        index: Dict[Hashable, int] = {}
        for node in nodes:
            for code, child in propagate(node.dist, spec).items():
                mass = child.named_mass
                if allowed is not None and code not in allowed:
                    excluded += node.multiplicity * mass
                    continue
                if mass <= 0.0:
                    continue
                if absorb is not None and absorb(spec, child):
                    absorbed += node.multiplicity * mass
                    continue
                word = node.word + glyphs[code]
                if reduce:
                    sig = _canonical(spec, child)
                    k = index.get(sig)
                    if k is not None:
                        children[k].multiplicity += node.multiplicity
                        continue
                    index[sig] = len(children)
                children.append(_Node(word, child, mass, node.multiplicity))

        budget = per_level + carry
        children, spent = _prune(children, budget)
        carry = budget - spent
        tail += spent
        if spent > 0.0:
            logger.debug("%s t=%d: pruned mass %.3g", spec.name, t, spent)
        if len(children) > max_words:
            raise BudgetError(
                f"{spec.name}: {len(children)} words at length {t} exceed the budget of {max_words}"
            )
        logger.debug("%s t=%d: %d entries", spec.name, t, len(children))

        nodes = children
        yield WordTable(
            t,
            {n.word: n.mass for n in nodes},
            tail,
            size,
            {n.word: n.multiplicity for n in nodes if n.multiplicity != 1},
            {n.word: n.dist for n in nodes} if keep_forward else {},
            absorbed,
            excluded,
            reduce,
        )


def word_table(spec: MachineSpec, t: int, mass_tol: float = 1e-6, **kwargs) -> WordTable:
    """Table of all length-t words (see ``iter_word_tables`` for options)."""
    table = None
    for table in iter_word_tables(spec, t, mass_tol, **kwargs):
        pass
    return table

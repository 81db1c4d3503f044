"""Lazy countable-state edge-emitting hidden Markov machines."""

from dataclasses import dataclass
import functools
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union
import math

import numpy as np

from ..math import Enclosure, entropy_bits
from ...errors import AlphabetError, ParamError


@dataclass(frozen=True, order=True)
class Symbol:
    """Output symbol: integer code plus one-character display glyph."""

    code: int
    glyph: str

    def __post_init__(self):
        if self.code < 0:
            raise ValueError("Symbol code must be nonnegative")
        if len(self.glyph) != 1:
            raise ValueError("Symbol glyph must be a single character")

    def __str__(self) -> str:
        return self.glyph


@dataclass(frozen=True, order=True)
class StateKey:
    """Value identity of one state (or one lumped state) of a machine."""

    tag: str
    indices: Tuple[int, ...] = ()

    def __str__(self) -> str:
        if not self.indices:
            return self.tag
        return f"{self.tag}{self.indices}"


@dataclass(frozen=True)
class Edge:
    """Transition emitting ``symbol`` with ``probability`` into ``target``."""

    symbol: Symbol
    probability: float
    target: StateKey

    def __post_init__(self):
        if not 0.0 < self.probability <= 1.0 + 1e-12:
            raise ValueError(f"Edge probability must lie in (0, 1], got {self.probability}")


SymbolLike = Union[Symbol, int, str]
WordLike = Union[str, Sequence[SymbolLike]]


class Alphabet:
    """Ordered finite set of symbols with codes 0..n-1."""

    def __init__(self, symbols: Sequence[Symbol]):
        self._symbols = tuple(sorted(symbols))
        codes = [s.code for s in self._symbols]
        if codes != list(range(len(codes))):
            raise ValueError(f"Symbol codes must be 0..{len(codes) - 1}, got {codes}")
        glyphs = [s.glyph for s in self._symbols]
        if len(set(glyphs)) != len(glyphs):
            raise ValueError("Symbol glyphs must be unique within an alphabet")
        self._by_glyph = {s.glyph: s for s in self._symbols}

    @classmethod
    def of(cls, glyphs: str) -> "Alphabet":
        """Alphabet whose i-th glyph gets code i."""
        return cls([Symbol(i, g) for i, g in enumerate(glyphs)])

    @property
    def size(self) -> int:
        return len(self._symbols)

    @property
    def log_size(self) -> float:
        return math.log2(self.size) if self.size > 1 else 0.0

    @property
    def glyphs(self) -> str:
        return "".join(s.glyph for s in self._symbols)

    def __len__(self) -> int:
        return len(self._symbols)

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self._symbols)

    def __getitem__(self, code: int) -> Symbol:
        return self._symbols[code]

    def symbol(self, value: SymbolLike) -> Symbol:
        """Resolve a Symbol, code or glyph to a member of this alphabet."""
        if isinstance(value, Symbol):
            if value.code < self.size and self._symbols[value.code] == value:
                return value
        elif isinstance(value, str):
            if value in self._by_glyph:
                return self._by_glyph[value]
        elif isinstance(value, (int, np.integer)) and 0 <= int(value) < self.size:
            return self._symbols[int(value)]
        raise AlphabetError(f"{value!r} is not a symbol of alphabet {self.glyphs!r}")

    def parse(self, word: WordLike) -> str:
        """Canonical glyph string of a word."""
        return "".join(self.symbol(x).glyph for x in word)

    def codes(self, word: WordLike) -> List[int]:
        return [self.symbol(x).code for x in word]

    def __repr__(self) -> str:
        return f"Alphabet({self.glyphs!r})"


class MachineSpec:
    """Countable-state HMM (S, X, {T^x}, pi) given by rules rather than matrices.

    Args:
        name: Machine identifier
        alphabet: Output alphabet
        expand: Rule key -> outgoing edges (positive probabilities only)
        stationary_weight: Rule key -> normalised stationary probability
        support_enumerator: Rule eps -> SparseDistribution covering mass >= 1 - eps,
            with the uncovered mass declared as tail
        state_entropy: h_sigma = H[next symbol | key]; computed from edges when omitted
        stationary_class: Projection used when comparing stationary vectors
        is_atomic: Whether a key denotes a single hidden state
        tail_symbol_bound: Fraction of tail mass that can survive a symbol
        horizon: Longest word length reproduced exactly (None for all lengths)
        entropy_rate: Rule tol -> Enclosure of sum_sigma pi_sigma h_sigma
        underlying: Exact machine this presentation reduces
        weight_uncertainty: Relative uncertainty of stationary weights
        relabel: Involutive automorphism of keys that commutes with the dynamics up to
            a permutation of symbols preserving every next-symbol entropy
        params: Construction parameters, for reporting
    """

    def __init__(
        self,
        name: str,
        alphabet: Union[Alphabet, Sequence[Symbol]],
        expand: Callable[[StateKey], Sequence[Edge]],
        stationary_weight: Callable[[StateKey], float],
        support_enumerator: Callable[[float], Any],
        *,
        state_entropy: Optional[Callable[[StateKey], float]] = None,
        stationary_class: Optional[Callable[[StateKey], StateKey]] = None,
        is_atomic: Optional[Callable[[StateKey], bool]] = None,
        tail_symbol_bound: Optional[Callable[[int], float]] = None,
        horizon: Optional[int] = None,
        entropy_rate: Optional[Callable[[float], Enclosure]] = None,
        underlying: Optional["MachineSpec"] = None,
        weight_uncertainty: float = 0.0,
        params: Optional[Dict[str, Any]] = None,
        relabel: Optional[Callable[[StateKey], StateKey]] = None,
        edge_cache_size: int = 1 << 16,
    ):
        self.name = name
        self.alphabet = alphabet if isinstance(alphabet, Alphabet) else Alphabet(alphabet)
        self.expand = expand
        self.stationary_weight = stationary_weight
        self.support_enumerator = support_enumerator
        self._state_entropy = state_entropy
        self._stationary_class = stationary_class
        self._is_atomic = is_atomic
        self._tail_symbol_bound = tail_symbol_bound
        self.horizon = horizon
        self._entropy_rate = entropy_rate
        self.underlying = underlying
        self.weight_uncertainty = weight_uncertainty
        self.params = dict(params or {})
        self.relabel = relabel
        self._edges = functools.lru_cache(maxsize=edge_cache_size)(self._sorted_edges)
        self._entropies = functools.lru_cache(maxsize=edge_cache_size)(self._compute_entropy)

    def _sorted_edges(self, key: StateKey) -> Tuple[Edge, ...]:
        return tuple(sorted(self.expand(key), key=lambda e: e.symbol.code))

    def edges(self, key: StateKey) -> Tuple[Edge, ...]:
        """Outgoing edges of a key in symbol-code order."""
        return self._edges(key)

    def support(self, eps: float):
        """Truncated stationary vector (a SparseDistribution) with declared tail."""
        if not 0.0 < eps < 1.0:
            raise ParamError(f"mass tolerance must lie in (0, 1), got {eps}")
        return self.support_enumerator(eps)

    def symbol_probabilities(self, key: StateKey) -> np.ndarray:
        """Next-symbol distribution from a key."""
        probs = np.zeros(self.alphabet.size)
        for edge in self.edges(key):
            probs[edge.symbol.code] += edge.probability
        return probs

    def state_entropy(self, key: StateKey) -> float:
        return self._entropies(key)

    def _compute_entropy(self, key: StateKey) -> float:
        if self._state_entropy is not None:
            return self._state_entropy(key)
        return entropy_bits(self.symbol_probabilities(key))

    def stationary_class(self, key: StateKey) -> StateKey:
        if self._stationary_class is not None:
            return self._stationary_class(key)
        return key

    def is_atomic(self, key: StateKey) -> bool:
        if self._is_atomic is not None:
            return self._is_atomic(key)
        return True

    def tail_symbol_bound(self, code: int) -> float:
        if self._tail_symbol_bound is not None:
            return self._tail_symbol_bound(code)
        return 1.0

    @property
    def has_entropy_rate(self) -> bool:
        return self._entropy_rate is not None

    def entropy_rate(self, tol: float) -> Enclosure:
        if self._entropy_rate is None:
            raise NotImplementedError(f"{self.name} has no analytic entropy-rate rule")
        return self._entropy_rate(tol)

    @property
    def structural(self) -> "MachineSpec":
        """The exact machine whose structure (e.g. unifilarity) this spec presents."""
        return self.underlying if self.underlying is not None else self

    def check_horizon(self, length: int) -> None:
        """Raise ParamError if words of ``length`` are beyond the exact horizon."""
        if self.horizon is not None and length > self.horizon:
            raise ParamError(
                f"{self.name} reproduces words up to length {self.horizon}; {length} requested"
            )

    def parse(self, word: WordLike) -> str:
        return self.alphabet.parse(word)

    def __repr__(self) -> str:
        extra = f", horizon={self.horizon}" if self.horizon is not None else ""
        return f"MachineSpec({self.name!r}, alphabet={self.alphabet.glyphs!r}{extra})"

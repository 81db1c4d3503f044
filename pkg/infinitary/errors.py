"""Exception hierarchy for infinitary."""

from typing import Any


class InfinitaryError(Exception):
    """Base class for all errors raised by the package."""


class ParamError(InfinitaryError, ValueError):
    """A machine or analysis parameter lies outside its admissible range."""


class AlphabetError(InfinitaryError, ValueError):
    """A word contains a symbol that is not part of the machine alphabet."""


class UnknownStateError(InfinitaryError, ValueError):
    """A state key does not denote a state of the machine."""


class NormalizationError(InfinitaryError):
    """Outgoing edge probabilities of a state do not sum to one."""

    def __init__(self, key: Any, total: float):
        self.key = key
        self.total = total
        super().__init__(f"outgoing probabilities of {key} sum to {total!r}, expected 1")


class DuplicateEdgeError(InfinitaryError):
    """Two edges leaving one state share a symbol where unifilarity was required."""

    def __init__(self, key: Any, symbol: Any):
        self.key = key
        self.symbol = symbol
        super().__init__(f"state {key} has more than one edge labelled {symbol}")


class ZeroProbabilityError(InfinitaryError):
    """A word's probability cannot be certified positive at the requested precision."""


class BudgetError(InfinitaryError):
    """An enumeration exceeded its configured size budget."""


class UnifilarityError(InfinitaryError):
    """A unifilar-only computation was requested for a nonunifilar machine."""


class InsufficientDataError(InfinitaryError):
    """Too few samples for the requested empirical estimate."""


class ReturnParityError(InfinitaryError):
    """A sampled return time has a length the machine's structure rules out."""

    def __init__(self, state: Any, odd: int, n: int):
        self.state = state
        self.odd = odd
        self.n = n
        super().__init__(f"{odd} of {n} returns to {state} have odd length > 1")

"""Empirical information estimates from sampled symbol sequences."""

from dataclasses import dataclass, field
import logging
from typing import Dict, Optional, Sequence, Union

import numpy as np
import pandas as pd

from ..math import Enclosure
from ...errors import InsufficientDataError, ParamError

logger = logging.getLogger(__name__)

DEFAULT_BLOCKS = 20
MIN_SAMPLES_PER_WORD = 10

SymbolCodes = Union[np.ndarray, Sequence[int]]


@dataclass
class EstimateReport:
    """Point estimate with standard error, optionally next to an exact enclosure."""

    quantity: str
    estimate: float
    stderr: float
    exact: Optional[Enclosure] = None
    n: int = 0
    details: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if not self.stderr >= 0.0:
            raise ValueError(f"standard error must be nonnegative, got {self.stderr}")

    @property
    def distance(self) -> float:
        """Distance from the estimate to the exact enclosure (0 inside, nan without one)."""
        if self.exact is None:
            return float("nan")
        if self.exact.contains(self.estimate):
            return 0.0
        return min(abs(self.estimate - self.exact.lower), abs(self.estimate - self.exact.upper))

    def within(self, k: float = 3.0) -> bool:
        """Whether the exact enclosure lies within k standard errors of the estimate."""
        return self.distance <= k * self.stderr

    def as_row(self) -> Dict[str, float]:
        return {
            "quantity": self.quantity,
            "estimate": self.estimate,
            "stderr": self.stderr,
            "exact_lower": self.exact.lower if self.exact is not None else np.nan,
            "exact_upper": self.exact.upper if self.exact is not None else np.nan,
            "n": self.n,
            **self.details,
        }


def window_ids(symbols: SymbolCodes, t: int, alphabet_size: int) -> np.ndarray:
    """Integer id of every length-t sliding window (base-|X| digits, first symbol most significant)."""
    codes = np.asarray(symbols, dtype=np.int64)
    if t < 1:
        raise ParamError("window length must be at least 1")
    if codes.size < t:
        return np.zeros(0, dtype=np.int64)
    powers = alphabet_size ** np.arange(t - 1, -1, -1, dtype=np.int64)
    return np.lib.stride_tricks.sliding_window_view(codes, t) @ powers


def decode_id(word_id: int, t: int, glyphs: str) -> str:
    """Glyph string of a window id."""
    size = len(glyphs)
    out = []
    for _ in range(t):
        word_id, code = divmod(int(word_id), size)
        out.append(glyphs[code])
    return "".join(reversed(out))


def _plugin_entropy(counts: np.ndarray) -> float:
    counts = counts[counts > 0]
    total = counts.sum()
    if total == 0:
        return 0.0
    f = counts / total
    return float(-np.sum(f * np.log2(f)))


def _concatenated_ids(sequences: Sequence[SymbolCodes], t: int, alphabet_size: int) -> np.ndarray:
    pieces = [window_ids(s, t, alphabet_size) for s in sequences]
    return np.concatenate(pieces) if pieces else np.zeros(0, dtype=np.int64)


def empirical_block_entropy(
    sequences: Sequence[SymbolCodes],
    t: int,
    alphabet_size: int,
    n_blocks: int = DEFAULT_BLOCKS,
    exact: Optional[Enclosure] = None,
) -> EstimateReport:
    """Plug-in estimate of H[X^t] with a delete-one-block jackknife standard error.

    Args:
        sequences: Symbol-code sequences (windows never straddle two sequences)
        t: Block length
        alphabet_size: |X|
        n_blocks: Number of contiguous window blocks for the jackknife
        exact: Exact enclosure to report alongside

    Returns:
        EstimateReport

    Raises:
        InsufficientDataError: If there are fewer than 10 windows per distinct word
    """
    if n_blocks < 2:
        raise ParamError("the jackknife needs at least two blocks")
    ids = _concatenated_ids(sequences, t, alphabet_size)
    words, inverse = np.unique(ids, return_inverse=True)
    if ids.size == 0 or ids.size < MIN_SAMPLES_PER_WORD * words.size:
        raise InsufficientDataError(
            f"{ids.size} windows for {words.size} distinct words of length {t}; "
            f"need at least {MIN_SAMPLES_PER_WORD} per word"
        )
    counts = np.bincount(inverse, minlength=words.size)
    estimate = _plugin_entropy(counts)

    blocks = np.array_split(inverse, n_blocks)
    leave_out = np.array([
        _plugin_entropy(counts - np.bincount(block, minlength=words.size)) for block in blocks
    ])
    b = len(blocks)
    stderr = float(np.sqrt((b - 1) / b * np.sum((leave_out - leave_out.mean()) ** 2)))
    logger.debug("H[X^%d] plug-in %.6f +- %.3g over %d windows", t, estimate, stderr, ids.size)
    return EstimateReport(f"H[X^{t}]", estimate, stderr, exact, int(ids.size),
                          {"distinct_words": float(words.size)})


def empirical_word_frequencies(
    sequences: Sequence[SymbolCodes],
    t: int,
    glyphs: str,
    n_blocks: int = DEFAULT_BLOCKS,
) -> pd.DataFrame:
    """Relative frequency of each observed length-t word with batch-means standard errors.

    Returns:
        DataFrame with columns word, count, frequency, stderr, sorted by word
    """
    if n_blocks < 2:
        raise ParamError("batch means need at least two blocks")
    ids = _concatenated_ids(sequences, t, len(glyphs))
    if ids.size < n_blocks:
        raise InsufficientDataError(f"{ids.size} windows cannot fill {n_blocks} batches")
    words, inverse = np.unique(ids, return_inverse=True)
    counts = np.bincount(inverse, minlength=words.size)
    batches = np.array([
        np.bincount(block, minlength=words.size) / block.size
        for block in np.array_split(inverse, n_blocks)
    ])
    stderr = batches.std(axis=0, ddof=1) / np.sqrt(n_blocks)
    frame = pd.DataFrame({
        "word": [decode_id(w, t, glyphs) for w in words],
        "count": counts,
        "frequency": counts / ids.size,
        "stderr": stderr,
    })
    return frame.sort_values("word", ignore_index=True)


def mean_estimate(values: SymbolCodes, quantity: str,
                  exact: Optional[Enclosure] = None) -> EstimateReport:
    """Sample mean with the usual standard error s / sqrt(n)."""
    data = np.asarray(values, dtype=float)
    if data.size == 0:
        raise InsufficientDataError(f"no samples for {quantity}")
    stderr = float(data.std(ddof=1) / np.sqrt(data.size)) if data.size > 1 else float("inf")
    return EstimateReport(quantity, float(data.mean()), stderr, exact, int(data.size))

"""Goodness-of-fit of sampled word counts against certified word probabilities."""

from dataclasses import dataclass
import math
from typing import Dict, Mapping, Sequence

import numpy as np
from scipy import stats

from ...errors import ParamError
from .estimators import DEFAULT_BLOCKS, SymbolCodes, empirical_word_frequencies

MIN_EXPECTED = 5.0


@dataclass(frozen=True)
class FitResult:
    """Pearson statistic of a count table after sparse categories were pooled."""

    quantity: str
    statistic: float
    pvalue: float
    dof: int
    n: int
    pooled: int = 0

    def rejects(self, alpha: float = 1e-3) -> bool:
        return self.pvalue < alpha

    def as_row(self) -> Dict[str, float]:
        return {
            "quantity": self.quantity,
            "estimate": self.statistic,
            "stderr": np.nan,
            "n": self.n,
            "pvalue": self.pvalue,
            "dof": self.dof,
        }


def _pool(counts: np.ndarray, probs: np.ndarray, min_expected: float):
    # categories below min_expected share one remainder bin
    total = counts.sum()
    sparse = probs * total < min_expected
    if not sparse.any() or sparse.all():
        return counts, probs, 0
    kept_counts, kept_probs = counts[~sparse], probs[~sparse]
    rest_count, rest_prob = counts[sparse].sum(), probs[sparse].sum()
    if rest_prob * total < min_expected and kept_probs.size > 2:
        # fold a still-sparse remainder into the smallest kept bin
        smallest = int(np.argmin(kept_probs))
        kept_counts = kept_counts.copy()
        kept_probs = kept_probs.copy()
        kept_counts[smallest] += rest_count
        kept_probs[smallest] += rest_prob
        return kept_counts, kept_probs, int(sparse.sum())
    return (np.append(kept_counts, rest_count), np.append(kept_probs, rest_prob),
            int(sparse.sum()))


class ChiSquareTest:
    """Pearson chi-square of observed counts against known category probabilities."""

    __test__ = False

    @staticmethod
    def test(observed: Sequence[int], probabilities: Sequence[float], quantity: str = "chi2",
             min_expected: float = MIN_EXPECTED) -> FitResult:
        """Run the test.

        Categories of probability zero must be empty: a count there rejects with
        p-value 0. Categories expecting fewer than ``min_expected`` counts are pooled.

        Args:
            observed: Counts per category
            probabilities: Category probabilities (renormalised over the categories)
            quantity: Row label
            min_expected: Smallest expected count kept as its own category

        Returns:
            FitResult with (categories after pooling - 1) degrees of freedom
        """
        counts = np.asarray(observed, dtype=float)
        probs = np.asarray(probabilities, dtype=float)
        if counts.shape != probs.shape or counts.size < 2:
            raise ParamError("need matching counts and probabilities for at least two categories")
        if (probs < 0).any() or probs.sum() <= 0:
            raise ParamError("category probabilities must be nonnegative with positive total")
        n = int(counts.sum())
        impossible = probs == 0.0
        if (counts[impossible] > 0).any():
            return FitResult(quantity, math.inf, 0.0, int((~impossible).sum()) - 1, n)
        counts, probs = counts[~impossible], probs[~impossible] / probs.sum()
        counts, probs, pooled = _pool(counts, probs, min_expected)
        if counts.size < 2:
            raise ParamError(f"{quantity}: fewer than two categories left after pooling")
        statistic, pvalue = stats.chisquare(counts, probs * counts.sum())
        return FitResult(quantity, float(statistic), float(pvalue), counts.size - 1, n, pooled)


def word_frequency_fit(
    sequences: Sequence[SymbolCodes],
    t: int,
    glyphs: str,
    probabilities: Mapping[str, float],
    n_blocks: int = DEFAULT_BLOCKS,
) -> FitResult:
    """Chi-square of length-t window counts against exact word probabilities.

    Words missing from ``probabilities`` share one category carrying the
    unlisted mass 1 - sum(probabilities). Overlapping windows are dependent,
    so the p-value is indicative only.
    """
    frame = empirical_word_frequencies(sequences, t, glyphs, n_blocks)
    seen = dict(zip(frame["word"], frame["count"]))
    words = sorted(probabilities)
    counts = [seen.pop(w, 0) for w in words]
    probs = [probabilities[w] for w in words]
    counts.append(sum(seen.values()))
    probs.append(max(0.0, 1.0 - math.fsum(probs)))
    return ChiSquareTest.test(counts, probs, quantity=f"chi2[X^{t}]")

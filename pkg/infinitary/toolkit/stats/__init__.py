"""Statistical estimators and tests for sampled trajectories."""

from .estimators import (
    EstimateReport,
    window_ids,
    decode_id,
    empirical_block_entropy,
    empirical_word_frequencies,
    mean_estimate,
)
from .tests import FitResult, ChiSquareTest, word_frequency_fit

__all__ = [
    # Estimators
    "EstimateReport",
    "window_ids",
    "decode_id",
    "empirical_block_entropy",
    "empirical_word_frequencies",
    "mean_estimate",
    # Tests
    "FitResult",
    "ChiSquareTest",
    "word_frequency_fit",
]

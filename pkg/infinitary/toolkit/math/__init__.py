"""Mathematical utilities: enclosures, certified series and entropy helpers."""

from .enclosure import Enclosure
from .series import integral_test_bracket, partial_sum, tail_integral, first_index_below
from .information import (
    LN2,
    entropy_bits,
    weighted_entropy_bits,
    binary_entropy,
    branching_entropy,
    continuity_radius,
)

__all__ = [
    "Enclosure",
    "integral_test_bracket",
    "partial_sum",
    "tail_integral",
    "first_index_below",
    "LN2",
    "entropy_bits",
    "weighted_entropy_bits",
    "binary_entropy",
    "branching_entropy",
    "continuity_radius",
]

"""Certified information-theoretic analysis of hidden Markov machines."""

from .words import WordTable, iter_word_tables, word_table, DEFAULT_MAX_WORDS
from .entropy import (
    EntropyCurve,
    block_entropy,
    block_entropies,
    hmu_curve,
    excess_entropy_estimate,
    stationary_entropy,
)
from .mixed_states import (
    MixedState,
    SYNC_THRESHOLD,
    mixed_state,
    is_synchronized,
    gap_from_forward,
    entropy_gap,
    table_gap_sum,
    entropy_gap_curve,
    entropy_gap_sum,
    gap_terms,
    sync_curve,
    sync_probability,
    gap_bound_from_sync,
)
from .rates import unifilar_entropy_rate, generic_rate_lower_bound, alternative_rate

__all__ = [
    "WordTable",
    "iter_word_tables",
    "word_table",
    "DEFAULT_MAX_WORDS",
    "EntropyCurve",
    "block_entropy",
    "block_entropies",
    "hmu_curve",
    "excess_entropy_estimate",
    "stationary_entropy",
    "MixedState",
    "SYNC_THRESHOLD",
    "mixed_state",
    "is_synchronized",
    "gap_from_forward",
    "entropy_gap",
    "table_gap_sum",
    "entropy_gap_curve",
    "entropy_gap_sum",
    "gap_terms",
    "sync_curve",
    "sync_probability",
    "gap_bound_from_sync",
    "unifilar_entropy_rate",
    "generic_rate_lower_bound",
    "alternative_rate",
]

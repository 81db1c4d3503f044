"""Lazy countable-state hidden Markov machines and the sparse forward algebra."""

from .definition import Symbol, StateKey, Edge, Alphabet, MachineSpec
from .distribution import SparseDistribution
from .forward import (
    apply_symbol,
    propagate,
    step,
    forward,
    word_probability,
    step_stationarity_residual,
)
from .validation import ValidationReport, StateCheck, validate_machine, reachable_sample, is_unifilar
from .finite import finite_machine, stationary_distribution

__all__ = [
    "Symbol",
    "StateKey",
    "Edge",
    "Alphabet",
    "MachineSpec",
    "SparseDistribution",
    "apply_symbol",
    "propagate",
    "step",
    "forward",
    "word_probability",
    "step_stationarity_residual",
    "ValidationReport",
    "StateCheck",
    "validate_machine",
    "reachable_sample",
    "is_unifilar",
    "finite_machine",
    "stationary_distribution",
]

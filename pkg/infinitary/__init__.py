"""
infinitary - certified information measures of countable-state hidden Markov processes

Provides:
- Lazy countable-state machines and a sparse forward algebra with tracked tails
- Word tables, block entropies, entropy-rate approximations and gap sums as enclosures
- The Even, HPM and BC processes, with executable checks of their excess-entropy bounds
- Seeded trajectory sampling and empirical estimators
"""

__version__ = "0.1.0"

from infinitary.toolkit.math import Enclosure
from infinitary.toolkit.hmm import MachineSpec, SparseDistribution, StateKey
from infinitary.processes import build_machine, even_machine, hpm_machine, bc_machine

__all__ = [
    "Enclosure",
    "MachineSpec",
    "SparseDistribution",
    "StateKey",
    "build_machine",
    "even_machine",
    "hpm_machine",
    "bc_machine",
]

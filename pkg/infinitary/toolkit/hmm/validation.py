"""Structural validation of machines on sampled states."""

from collections import deque
from dataclasses import dataclass, field
import logging
import math
from typing import List, Optional, Sequence

from .definition import MachineSpec, StateKey
from ...errors import DuplicateEdgeError, NormalizationError

logger = logging.getLogger(__name__)

NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True)
class StateCheck:
    """Validation result for one state."""

    key: StateKey
    total: float
    n_edges: int
    unifilar: bool


@dataclass
class ValidationReport:
    """Per-state normalisation and unifilarity results."""

    machine: str
    states: List[StateCheck] = field(default_factory=list)

    @property
    def unifilar(self) -> bool:
        return all(s.unifilar for s in self.states)

    @property
    def deterministic(self) -> bool:
        """Every sampled state has a single edge, so all h_sigma vanish."""
        return all(s.n_edges == 1 for s in self.states)

    @property
    def max_deviation(self) -> float:
        return max((abs(s.total - 1.0) for s in self.states), default=0.0)

    @property
    def nonunifilar_states(self) -> List[StateKey]:
        return [s.key for s in self.states if not s.unifilar]

    def summary(self) -> str:
        return (
            f"{self.machine}: {len(self.states)} states checked, "
            f"max deviation {self.max_deviation:.3g}, unifilar={self.unifilar}"
        )


def reachable_sample(spec: MachineSpec, limit: int = 2000, eps: float = 1e-3) -> List[StateKey]:
    """Breadth-first sample of keys reachable from the truncated support."""
    support = spec.support(eps)
    seen = set()
    order: List[StateKey] = []
    queue = deque(sorted(support.masses))
    while queue and len(order) < limit:
        key = queue.popleft()
        if key in seen:
            continue
        seen.add(key)
        order.append(key)
        for edge in spec.edges(key):
            if edge.target not in seen:
                queue.append(edge.target)
    return order


def validate_machine(
    spec: MachineSpec,
    sample_keys: Optional[Sequence[StateKey]] = None,
    require_unifilar: bool = False,
) -> ValidationReport:
    """Check edge normalisation and unifilarity on sample keys.

    Args:
        spec: Machine to validate
        sample_keys: Keys reachable from the support; a breadth-first sample when omitted
        require_unifilar: Raise DuplicateEdgeError on the first shared symbol

    Returns:
        ValidationReport

    Raises:
        NormalizationError: If any state's outgoing probabilities do not sum to 1
    """
    keys = list(sample_keys) if sample_keys is not None else reachable_sample(spec)
    report = ValidationReport(spec.name)
    for key in keys:
        edges = spec.edges(key)
        total = math.fsum(e.probability for e in edges)
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise NormalizationError(key, total)
        codes = [e.symbol.code for e in edges]
        unifilar = len(set(codes)) == len(codes)
        if require_unifilar and not unifilar:
            shared = next(c for c in codes if codes.count(c) > 1)
            raise DuplicateEdgeError(key, spec.alphabet[shared])
        report.states.append(StateCheck(key, total, len(edges), unifilar))
    logger.debug(report.summary())
    return report


def is_unifilar(spec: MachineSpec, limit: int = 2000) -> bool:
    """Unifilarity of the exact machine behind ``spec`` on a reachable sample.

    Lumped presentations are usually nonunifilar even when the machine they
    reduce is unifilar, so the check runs on ``spec.structural``.
    """
    structural = spec.structural
    keys = reachable_sample(structural, limit=limit, eps=0.5)
    return validate_machine(structural, keys).unifilar

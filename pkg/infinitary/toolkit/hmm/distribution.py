"""Sparse state distributions with tracked tail mass."""

from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, Iterator, Optional, Tuple
import math

from .definition import StateKey

MASS_SLACK = 1e-12


@dataclass
class SparseDistribution:
    """Finite mapping state -> mass plus mass on states not named.

    Used for truncated stationary vectors, unnormalised forward vectors and
    mixed states. The tail is mass whose states are unknown; it only ever
    widens upper bounds.
    """

    masses: Dict[StateKey, float] = field(default_factory=dict)
    tail: float = 0.0

    def __post_init__(self):
        if self.tail < 0.0:
            if self.tail < -MASS_SLACK:
                raise ValueError(f"tail mass must be nonnegative, got {self.tail}")
            self.tail = 0.0

    @classmethod
    def point(cls, key: StateKey, mass: float = 1.0) -> "SparseDistribution":
        return cls({key: mass}, 0.0)

    @property
    def named_mass(self) -> float:
        return math.fsum(self.masses.values())

    @property
    def total(self) -> float:
        return self.named_mass + self.tail

    def __len__(self) -> int:
        return len(self.masses)

    def __iter__(self) -> Iterator[StateKey]:
        return iter(self.masses)

    def items(self):
        return self.masses.items()

    def get(self, key: StateKey) -> float:
        return self.masses.get(key, 0.0)

    def is_zero(self) -> bool:
        return not self.masses and self.tail == 0.0

    def validate(self) -> None:
        """Check nonnegativity and total mass <= 1."""
        for key, mass in self.masses.items():
            if mass < 0.0:
                raise ValueError(f"negative mass {mass} at {key}")
        if self.total > 1.0 + MASS_SLACK:
            raise ValueError(f"total mass {self.total} exceeds 1")

    def scaled(self, factor: float) -> "SparseDistribution":
        return SparseDistribution(
            {k: m * factor for k, m in self.masses.items()}, self.tail * factor
        )

    def normalized(self) -> "SparseDistribution":
        """Rescale so that named mass plus tail is one."""
        total = self.total
        if total <= 0.0:
            raise ValueError("cannot normalise a zero distribution")
        return self.scaled(1.0 / total)

    def argmax(self) -> Tuple[Optional[StateKey], float]:
        if not self.masses:
            return None, 0.0
        key = max(sorted(self.masses), key=lambda k: self.masses[k])
        return key, self.masses[key]

    def project(self, mapping: Callable[[StateKey], StateKey]) -> "SparseDistribution":
        """Push masses forward along a key mapping, summing collisions."""
        out: Dict[StateKey, float] = {}
        for key, mass in self.masses.items():
            target = mapping(key)
            out[target] = out.get(target, 0.0) + mass
        return SparseDistribution(out, self.tail)

    def l1_distance(self, other: "SparseDistribution") -> float:
        """Distance between the named parts."""
        keys = set(self.masses) | set(other.masses)
        return math.fsum(abs(self.get(k) - other.get(k)) for k in keys)

    def signature(self, digits: int = 13) -> Hashable:
        """Value identity at ``digits`` significant digits, used to merge equal forward vectors."""
        return (
            tuple(sorted((k, float(f"{m:.{digits}g}")) for k, m in self.masses.items())),
            float(f"{self.tail:.{digits}g}"),
        )

    def relabeled(self, mapping: Callable[[StateKey], StateKey]) -> "SparseDistribution":
        """Rename keys along a bijection."""
        return SparseDistribution({mapping(k): m for k, m in self.masses.items()}, self.tail)

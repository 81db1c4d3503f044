"""Check rows and claim reports."""

from dataclasses import dataclass, field
import math
from typing import List, Optional

import pandas as pd

from ..toolkit.math import Enclosure


@dataclass(frozen=True)
class Check:
    """Result of comparing one certified value against a bound."""

    claim: str
    t: Optional[int]
    value: float
    bound: float
    passed: bool
    relation: str = ">="
    delta: float = math.nan
    description: str = ""

    @classmethod
    def at_least(cls, claim: str, t: Optional[int], value: Enclosure, bound: float,
                 description: str = "") -> "Check":
        """Pass iff the certified lower side exceeds the bound."""
        return cls(claim, t, value.lower, bound, value.lower > bound, ">=",
                   value.lower - bound, description)

    @classmethod
    def at_most(cls, claim: str, t: Optional[int], value: Enclosure, bound: float,
                description: str = "") -> "Check":
        """Pass iff the certified upper side stays below the bound."""
        return cls(claim, t, value.upper, bound, value.upper < bound, "<=",
                   bound - value.upper, description)

    @classmethod
    def not_below(cls, claim: str, t: Optional[int], value: Enclosure, bound: Enclosure,
                  slack: float = 1e-12, description: str = "") -> "Check":
        """Pass unless value is certifiably below bound beyond both enclosure widths."""
        allowance = value.width + bound.width + slack
        delta = value.lower - bound.lower
        return cls(claim, t, value.lower, bound.lower, delta >= -allowance, ">=", delta,
                   description)

    @classmethod
    def agrees(cls, claim: str, t: Optional[int], value: float, reference: float,
               slack: float, description: str = "") -> "Check":
        """Pass iff two independently computed values agree within slack."""
        delta = abs(value - reference)
        return cls(claim, t, value, reference, delta <= slack, "==", delta, description)

    @classmethod
    def overlapping(cls, claim: str, t: Optional[int], value: Enclosure, reference: Enclosure,
                    slack: float = 0.0, description: str = "") -> "Check":
        """Pass iff two independently certified enclosures intersect (within slack)."""
        gap = max(value.lower - reference.upper, reference.lower - value.upper, 0.0)
        return cls(claim, t, value.midpoint, reference.midpoint,
                   value.overlaps(reference, slack), "in", gap, description)

    @classmethod
    def holds(cls, claim: str, t: Optional[int], condition: bool, value: float = math.nan,
              description: str = "") -> "Check":
        """Structural property check with no numerical bound."""
        return cls(claim, t, value, math.nan, bool(condition), "holds", math.nan, description)


@dataclass
class ClaimReport:
    """All checks run for one claim."""

    claim: str
    description: str = ""
    checks: List[Check] = field(default_factory=list)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    @property
    def t_range(self) -> Optional[range]:
        ts = [c.t for c in self.checks if c.t is not None]
        return range(min(ts), max(ts) + 1) if ts else None

    def to_frame(self) -> pd.DataFrame:
        columns = ["claim", "t", "value", "bound", "relation", "passed", "delta", "description"]
        return pd.DataFrame(
            [
                {
                    "claim": c.claim,
                    "t": c.t,
                    "value": c.value,
                    "bound": c.bound,
                    "relation": c.relation,
                    "passed": c.passed,
                    "delta": c.delta,
                    "description": c.description,
                }
                for c in self.checks
            ],
            columns=columns,
        )

    def summary(self) -> str:
        status = "pass" if self.passed else f"FAIL ({len(self.failures)} of {len(self.checks)})"
        return f"{self.claim}: {status}"


def reports_frame(reports: List[ClaimReport]) -> pd.DataFrame:
    """Concatenate reports into one frame in report order."""
    frames = [r.to_frame() for r in reports if r.checks]
    if not frames:
        return ClaimReport("").to_frame()
    return pd.concat(frames, ignore_index=True)

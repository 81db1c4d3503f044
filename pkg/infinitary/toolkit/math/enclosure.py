"""Certified real enclosures."""

from dataclasses import dataclass
from typing import Iterable, Union
import math

Number = Union[int, float]

# Rounding slack tolerated when a computed lower bound lands marginally above its upper bound.
ROUNDING_SLACK = 1e-14


@dataclass(frozen=True)
class Enclosure:
    """Closed interval [lower, upper] known to contain a real quantity."""

    lower: float
    upper: float

    def __post_init__(self):
        if math.isnan(self.lower) or math.isnan(self.upper):
            raise ValueError("Enclosure bounds must not be NaN")
        if self.lower > self.upper:
            if self.lower - self.upper > ROUNDING_SLACK * max(1.0, abs(self.upper)):
                raise ValueError(f"Enclosure lower {self.lower} exceeds upper {self.upper}")
            object.__setattr__(self, "lower", self.upper)

    @classmethod
    def point(cls, value: Number) -> "Enclosure":
        """Degenerate enclosure of an exactly known value."""
        return cls(float(value), float(value))

    @classmethod
    def of(cls, a: Number, b: Number) -> "Enclosure":
        """Enclosure of two bounds given in either order."""
        return cls(float(min(a, b)), float(max(a, b)))

    @classmethod
    def hull(cls, enclosures: Iterable["Enclosure"]) -> "Enclosure":
        items = list(enclosures)
        if not items:
            raise ValueError("hull of no enclosures")
        return cls(min(e.lower for e in items), max(e.upper for e in items))

    @property
    def width(self) -> float:
        return self.upper - self.lower

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lower + self.upper)

    def contains(self, value: Number, slack: float = 0.0) -> bool:
        return self.lower - slack <= value <= self.upper + slack

    def overlaps(self, other: "Enclosure", slack: float = 0.0) -> bool:
        return self.lower - slack <= other.upper and other.lower - slack <= self.upper

    def widen(self, amount: float) -> "Enclosure":
        if amount < 0:
            raise ValueError("widening amount must be nonnegative")
        return Enclosure(self.lower - amount, self.upper + amount)

    def clip(self, lo: float = -math.inf, hi: float = math.inf) -> "Enclosure":
        """Intersect with [lo, hi], for quantities with known a priori range."""
        lower = min(max(self.lower, lo), hi)
        upper = max(min(self.upper, hi), lo)
        return Enclosure(lower, upper)

    def scale(self, factor: Number) -> "Enclosure":
        return Enclosure.of(self.lower * factor, self.upper * factor)

    def reciprocal(self) -> "Enclosure":
        if self.lower <= 0.0:
            raise ValueError("reciprocal needs a strictly positive enclosure")
        return Enclosure(1.0 / self.upper, 1.0 / self.lower)

    def __add__(self, other: Union["Enclosure", Number]) -> "Enclosure":
        if isinstance(other, Enclosure):
            return Enclosure(self.lower + other.lower, self.upper + other.upper)
        return Enclosure(self.lower + other, self.upper + other)

    __radd__ = __add__

    def __sub__(self, other: Union["Enclosure", Number]) -> "Enclosure":
        if isinstance(other, Enclosure):
            return Enclosure(self.lower - other.upper, self.upper - other.lower)
        return Enclosure(self.lower - other, self.upper - other)

    def __rsub__(self, other: Number) -> "Enclosure":
        return Enclosure(other - self.upper, other - self.lower)

    def __neg__(self) -> "Enclosure":
        return Enclosure(-self.upper, -self.lower)

    def __mul__(self, other: Union["Enclosure", Number]) -> "Enclosure":
        if not isinstance(other, Enclosure):
            return self.scale(other)
        products = (
            self.lower * other.lower,
            self.lower * other.upper,
            self.upper * other.lower,
            self.upper * other.upper,
        )
        return Enclosure(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other: Union["Enclosure", Number]) -> "Enclosure":
        if isinstance(other, Enclosure):
            return self * other.reciprocal()
        if other == 0:
            raise ZeroDivisionError("division of an enclosure by zero")
        return self.scale(1.0 / other)

    def __str__(self) -> str:
        return f"[{self.lower:.12g}, {self.upper:.12g}]"

"""Enclosing intervals for quantities computed with truncation tails."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

Scalar = Union[Fraction, float]


@dataclass(frozen=True)
class Interval:
    """Closed enclosure [lo, hi]; hi=None means no certified upper bound."""

    lo: Scalar
    hi: Optional[Scalar]

    def __post_init__(self) -> None:
        if self.hi is not None and self.lo > self.hi:
            raise ValueError(f"empty interval: {self.lo} > {self.hi}")

    @classmethod
    def point(cls, value: Scalar) -> "Interval":
        return cls(value, value)

    @property
    def bounded(self) -> bool:
        return self.hi is not None

    @property
    def width(self) -> Optional[Scalar]:
        return None if self.hi is None else self.hi - self.lo

    def contains(self, value: Scalar) -> bool:
        if self.hi is None:
            return value >= self.lo
        return self.lo <= value <= self.hi

    def add(self, other: "Interval") -> "Interval":
        hi = None if (self.hi is None or other.hi is None) else self.hi + other.hi
        return Interval(self.lo + other.lo, hi)

    def mul_nonneg(self, other: "Interval") -> "Interval":
        """Product of intervals with nonnegative lower ends."""
        if self.lo < 0 or other.lo < 0:
            raise ValueError("mul_nonneg requires nonnegative intervals")
        hi = None if (self.hi is None or other.hi is None) else self.hi * other.hi
        return Interval(self.lo * other.lo, hi)

    def scale_nonneg(self, factor: Scalar) -> "Interval":
        if factor < 0:
            raise ValueError("scale_nonneg requires factor >= 0")
        hi = None if self.hi is None else self.hi * factor
        return Interval(self.lo * factor, hi)


def interval_sum(items: list[Interval]) -> Interval:
    total = Interval.point(Fraction(0))
    for item in items:
        total = total.add(item)
    return total

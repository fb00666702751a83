"""Finite unions of disjoint open intervals on the half line."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator


def _recip(x: float) -> float:
    if x == 0.0:
        return math.inf
    if math.isinf(x):
        return 0.0
    return 1.0 / x


@dataclass(frozen=True)
class Interval:
    """Open interval ``(lo, hi)``; ``hi`` may be ``inf``."""

    lo: float
    hi: float
    label: str = ""

    def __post_init__(self):
        if not (self.lo >= 0.0 and self.hi > self.lo):
            raise ValueError(f"invalid interval ({self.lo}, {self.hi})")

    def __contains__(self, x: float) -> bool:
        return self.lo < x < self.hi

    def reciprocal(self) -> Interval:
        return Interval(_recip(self.hi), _recip(self.lo), self.label)

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.hi)

    def __str__(self) -> str:
        hi = "inf" if math.isinf(self.hi) else f"{self.hi:.12g}"
        return f"({self.lo:.12g}, {hi})"


class IntervalUnion:
    """Ordered, pairwise disjoint open intervals.

    Adjacent intervals may share an endpoint, since the endpoint itself is in
    neither of them.
    """

    def __init__(self, intervals: Iterable[Interval | tuple] = ()):
        ivs = [iv if isinstance(iv, Interval) else Interval(*iv) for iv in intervals]
        ivs.sort(key=lambda iv: iv.lo)
        for left, right in zip(ivs, ivs[1:]):
            if right.lo < left.hi:
                raise ValueError(f"overlapping intervals {left} and {right}")
        self._intervals = tuple(ivs)

    @property
    def intervals(self) -> tuple[Interval, ...]:
        return self._intervals

    def __iter__(self) -> Iterator[Interval]:
        return iter(self._intervals)

    def __len__(self) -> int:
        return len(self._intervals)

    def __getitem__(self, i: int) -> Interval:
        return self._intervals[i]

    def __contains__(self, x: float) -> bool:
        return any(x in iv for iv in self._intervals)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntervalUnion):
            return NotImplemented
        return [(iv.lo, iv.hi) for iv in self] == [(iv.lo, iv.hi) for iv in other]

    def __repr__(self) -> str:
        return "IntervalUnion(" + " U ".join(str(iv) for iv in self) + ")"

    def component_containing(self, x: float) -> Interval | None:
        for iv in self._intervals:
            if x in iv:
                return iv
        return None

    def intersects(self, lo: float, hi: float) -> bool:
        """True if some component meets the open interval ``(lo, hi)``."""
        return any(iv.lo < hi and lo < iv.hi for iv in self._intervals)

    def reciprocal(self) -> IntervalUnion:
        """Image under ``a -> 1/a``."""
        return IntervalUnion(iv.reciprocal() for iv in self._intervals)

    def intersection(self, other: IntervalUnion) -> IntervalUnion:
        out = []
        for a in self:
            for b in other:
                lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
                if hi > lo:
                    out.append(Interval(lo, hi, a.label or b.label))
        return IntervalUnion(out)

    def isclose(self, other: IntervalUnion, atol: float = 1e-12) -> bool:
        if len(self) != len(other):
            return False
        for a, b in zip(self, other):
            for x, y in ((a.lo, b.lo), (a.hi, b.hi)):
                if math.isinf(x) or math.isinf(y):
                    if x != y:
                        return False
                elif abs(x - y) > atol:
                    return False
        return True

    def to_list(self) -> list[list]:
        return [[iv.lo, None if math.isinf(iv.hi) else iv.hi] for iv in self]

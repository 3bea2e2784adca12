"""Closed rational intervals with exact endpoint arithmetic.

Endpoints are Fractions, so every operation is exact and the enclosure property
holds without directed rounding. :meth:`Interval.outward` snaps endpoints
outward onto a dyadic grid when denominators grow too large.
"""

from __future__ import annotations

import math
from fractions import Fraction

from branchcov.polycore import as_rat, rat_str


class Interval:
    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = as_rat(lo)
        hi = lo if hi is None else as_rat(hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    @staticmethod
    def _wrap(other) -> Interval:
        if isinstance(other, Interval):
            return other
        return Interval(other)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, value) -> bool:
        if isinstance(value, Interval):
            return self.lo <= value.lo and value.hi <= self.hi
        value = as_rat(value)
        return self.lo <= value <= self.hi

    __contains__ = contains

    def __neg__(self) -> Interval:
        return Interval(-self.hi, -self.lo)

    def __add__(self, other) -> Interval:
        o = self._wrap(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __sub__(self, other) -> Interval:
        o = self._wrap(other)
        return Interval(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other) -> Interval:
        return self._wrap(other) - self

    def __mul__(self, other) -> Interval:
        if not isinstance(other, Interval):
            c = as_rat(other)
            return Interval(c * self.lo, c * self.hi) if c >= 0 else Interval(c * self.hi, c * self.lo)
        ps = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Interval:
        if k < 0:
            raise ValueError("negative exponent")
        if k == 0:
            return Interval(1)
        lo_k, hi_k = self.lo**k, self.hi**k
        if k % 2 == 1 or self.lo >= 0:
            return Interval(min(lo_k, hi_k), max(lo_k, hi_k))
        if self.hi <= 0:
            return Interval(hi_k, lo_k)
        return Interval(0, max(lo_k, hi_k))

    def __truediv__(self, other) -> Interval:
        if isinstance(other, Interval):
            if other.lo <= 0 <= other.hi:
                raise ZeroDivisionError("interval divisor contains zero")
            return self * Interval(1 / other.hi, 1 / other.lo)
        c = as_rat(other)
        return self * (1 / c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Interval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    def __repr__(self) -> str:
        return f"Interval({rat_str(self.lo)}, {rat_str(self.hi)})"

    def outward(self, bits: int) -> Interval:
        """Enclosing interval whose endpoints are multiples of 2**-bits."""
        scale = 1 << bits
        lo = Fraction(math.floor(self.lo * scale), scale)
        hi = Fraction(math.ceil(self.hi * scale), scale)
        return Interval(lo, hi)

    def to_json(self) -> list[str]:
        return [rat_str(self.lo), rat_str(self.hi)]

"""Rational interval and rectangular complex box arithmetic.

Endpoints are exact ``Fraction`` values, so every enclosure is rigorous; the
only source of width is the input widths themselves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from otlck.exactnum.poly import RationalPolynomial, as_fraction


@dataclass(frozen=True)
class RInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> RInterval:
        x = as_fraction(x)
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def dyadic_hull(self, bits: int) -> RInterval:
        """Smallest enclosing interval with endpoints on the 2^-bits grid."""
        scale = 2**bits
        lo = Fraction(math.floor(self.lo * scale), scale)
        hi = Fraction(math.ceil(self.hi * scale), scale)
        return RInterval(lo, hi)

    def excludes_zero(self) -> bool:
        return self.lo > 0 or self.hi < 0

    def sign(self) -> int:
        """+1/-1 if the interval has a certified sign, else 0."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return 0

    def intersects(self, other: RInterval) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __add__(self, other) -> RInterval:
        other = _ri(other)
        return RInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self) -> RInterval:
        return RInterval(-self.hi, -self.lo)

    def __sub__(self, other) -> RInterval:
        other = _ri(other)
        return RInterval(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other) -> RInterval:
        return _ri(other) - self

    def __mul__(self, other) -> RInterval:
        other = _ri(other)
        ps = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return RInterval(min(ps), max(ps))

    __rmul__ = __mul__

    def __truediv__(self, other) -> RInterval:
        other = _ri(other)
        if not other.excludes_zero():
            raise ZeroDivisionError("interval division by an interval containing 0")
        return self * RInterval(1 / other.hi, 1 / other.lo)

    def sqr(self) -> RInterval:
        a, b = self.lo * self.lo, self.hi * self.hi
        if self.lo <= 0 <= self.hi:
            return RInterval(Fraction(0), max(a, b))
        return RInterval(min(a, b), max(a, b))

    def abs(self) -> RInterval:
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RInterval(Fraction(0), max(-self.lo, self.hi))

    def __repr__(self) -> str:
        return f"[{float(self.lo):.6g}, {float(self.hi):.6g}]"


def _ri(x) -> RInterval:
    return x if isinstance(x, RInterval) else RInterval.point(x)


@dataclass(frozen=True)
class CBox:
    re: RInterval
    im: RInterval

    @classmethod
    def point(cls, re, im=0) -> CBox:
        return cls(RInterval.point(re), RInterval.point(im))

    def conj(self) -> CBox:
        return CBox(self.re, -self.im)

    def __add__(self, other) -> CBox:
        other = _cb(other)
        return CBox(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __mul__(self, other) -> CBox:
        other = _cb(other)
        return CBox(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def abs2(self) -> RInterval:
        return self.re.sqr() + self.im.sqr()

    @property
    def width(self) -> Fraction:
        return max(self.re.width, self.im.width)

    def intersects(self, other: CBox) -> bool:
        return self.re.intersects(other.re) and self.im.intersects(other.im)


def _cb(x) -> CBox:
    if isinstance(x, CBox):
        return x
    if isinstance(x, RInterval):
        return CBox(x, RInterval.point(0))
    return CBox.point(x)


def eval_interval(p: RationalPolynomial, x):
    """Horner evaluation of p over an RInterval or CBox."""
    acc = None
    for c in reversed(p.coeffs):
        acc = c if acc is None else acc * x + c
    if acc is None:
        return x * 0
    if not isinstance(acc, (RInterval, CBox)):
        return _cb(acc) if isinstance(x, CBox) else RInterval.point(acc)
    return acc

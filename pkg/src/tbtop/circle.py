"""Exact arithmetic in the circle group T = Q/Z.

Every character value in this package lands here.  Points are stored as
reduced fractions in [0, 1); nothing is ever converted to float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


@dataclass(frozen=True, order=True)
class CirclePoint:
    """A point of Q/Z written as num/den with 0 <= num < den, gcd = 1."""

    num: int
    den: int

    def __post_init__(self) -> None:
        if self.den <= 0:
            raise ValueError(f"denominator must be positive, got {self.den}")
        if not 0 <= self.num < self.den:
            raise ValueError(f"{self.num}/{self.den} is not in [0, 1)")
        if gcd(self.num, self.den) != 1 and not (self.num == 0 and self.den == 1):
            raise ValueError(f"{self.num}/{self.den} is not reduced")

    @classmethod
    def from_fraction(cls, q: Fraction | int) -> CirclePoint:
        q = Fraction(q)
        return normalize(q.numerator, q.denominator)

    @classmethod
    def parse(cls, text: str) -> CirclePoint:
        """Read the textual form "num/den" (any integers, den > 0)."""
        text = text.strip()
        if "/" in text:
            a, b = text.split("/", 1)
            return normalize(int(a), int(b))
        return normalize(int(text), 1)

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def is_zero(self) -> bool:
        return self.num == 0

    def order(self) -> int:
        """Order of the point in T (the reduced denominator)."""
        return self.den

    def __add__(self, other: CirclePoint) -> CirclePoint:
        if not isinstance(other, CirclePoint):
            return NotImplemented
        return add(self, other)

    def __neg__(self) -> CirclePoint:
        return scale(-1, self)

    def __sub__(self, other: CirclePoint) -> CirclePoint:
        if not isinstance(other, CirclePoint):
            return NotImplemented
        return add(self, scale(-1, other))

    def __rmul__(self, m: int) -> CirclePoint:
        if not isinstance(m, int):
            return NotImplemented
        return scale(m, self)

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"

    def to_json(self) -> dict:
        return {"num": str(self.num), "den": str(self.den)}

    @classmethod
    def from_json(cls, obj) -> CirclePoint:
        if isinstance(obj, str):
            return cls.parse(obj)
        return normalize(int(obj["num"]), int(obj["den"]))


ZERO = CirclePoint(0, 1)


def normalize(numerator: int, denominator: int) -> CirclePoint:
    """Reduce numerator/denominator modulo 1 to its canonical point."""
    if denominator == 0:
        raise ZeroDivisionError("zero denominator")
    if denominator < 0:
        numerator, denominator = -numerator, -denominator
    numerator %= denominator
    if numerator == 0:
        return ZERO
    g = gcd(numerator, denominator)
    return CirclePoint(numerator // g, denominator // g)


def add(a: CirclePoint, b: CirclePoint) -> CirclePoint:
    g = gcd(a.den, b.den)
    den = a.den // g * b.den
    return normalize(a.num * (den // a.den) + b.num * (den // b.den), den)


def scale(m: int, a: CirclePoint) -> CirclePoint:
    return normalize(m * a.num, a.den)


def total(points) -> CirclePoint:
    acc = ZERO
    for pt in points:
        acc = add(acc, pt)
    return acc


def dist_to_zero(a: CirclePoint) -> Fraction:
    """Exact distance from a to 0 in the quotient metric, in [0, 1/2]."""
    q = Fraction(a.num, a.den)
    return min(q, 1 - q)


@dataclass(frozen=True)
class CircleInterval:
    """Closed arc of T: all points within `radius` of `center`.

    Produced when a character value is only known through a certified
    truncation; the true value lies in the arc.
    """

    center: CirclePoint
    radius: Fraction

    def __post_init__(self) -> None:
        if self.radius < 0:
            raise ValueError("negative radius")

    @property
    def width(self) -> Fraction:
        return 2 * self.radius

    def contains(self, pt: CirclePoint) -> bool:
        return dist_to_zero(pt - self.center) <= self.radius

    def dist_bounds(self) -> tuple[Fraction, Fraction]:
        """Lower and upper bounds for the distance to 0 of any point inside."""
        d = dist_to_zero(self.center)
        return max(Fraction(0), d - self.radius), min(Fraction(1, 2), d + self.radius)

    def to_json(self) -> dict:
        return {"center": str(self.center), "radius": str(self.radius)}

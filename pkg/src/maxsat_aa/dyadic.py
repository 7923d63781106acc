"""Exact dyadic rationals, numerator / 2**exponent."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Number = Union["DyadicRational", int]


def _normalize(num: int, exp: int) -> tuple[int, int]:
    if num == 0:
        return 0, 0
    if exp < 0:
        return num << -exp, 0
    # strip common factors of two
    tz = (num & -num).bit_length() - 1
    shift = min(tz, exp)
    return num >> shift, exp - shift


@dataclass(frozen=True, eq=False)
class DyadicRational:
    """An exact value ``numerator / 2**exponent``.

    Instances are always normalized: the numerator is odd, or it is zero
    and the exponent is zero. That makes equality structural.
    """

    numerator: int
    exponent: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.numerator, int) or not isinstance(self.exponent, int):
            raise TypeError("numerator and exponent must be integers")
        num, exp = _normalize(self.numerator, self.exponent)
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "exponent", exp)

    @classmethod
    def coerce(cls, value: Number) -> DyadicRational:
        if isinstance(value, DyadicRational):
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            return cls(value, 0)
        if isinstance(value, Fraction):
            den = value.denominator
            if den & (den - 1):
                raise ValueError(f"{value} is not dyadic")
            return cls(value.numerator, den.bit_length() - 1)
        raise TypeError(f"cannot convert {type(value).__name__} to DyadicRational")

    @classmethod
    def parse(cls, text: str) -> DyadicRational:
        """Parse ``"7/8"`` or ``"-3"``."""
        return cls.coerce(Fraction(text.strip()))

    @property
    def denominator(self) -> int:
        return 1 << self.exponent

    def _aligned(self, other: DyadicRational) -> tuple[int, int, int]:
        exp = max(self.exponent, other.exponent)
        return (
            self.numerator << (exp - self.exponent),
            other.numerator << (exp - other.exponent),
            exp,
        )

    def __add__(self, other: Number) -> DyadicRational:
        try:
            other = DyadicRational.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, exp = self._aligned(other)
        return DyadicRational(a + b, exp)

    __radd__ = __add__

    def __sub__(self, other: Number) -> DyadicRational:
        try:
            other = DyadicRational.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, exp = self._aligned(other)
        return DyadicRational(a - b, exp)

    def __rsub__(self, other: Number) -> DyadicRational:
        return (-self) + other

    def __neg__(self) -> DyadicRational:
        return DyadicRational(-self.numerator, self.exponent)

    def __abs__(self) -> DyadicRational:
        return DyadicRational(abs(self.numerator), self.exponent)

    def __mul__(self, other: Number) -> DyadicRational:
        try:
            other = DyadicRational.coerce(other)
        except TypeError:
            return NotImplemented
        return DyadicRational(self.numerator * other.numerator, self.exponent + other.exponent)

    __rmul__ = __mul__

    def scale2(self, power: int) -> DyadicRational:
        """Multiply by ``2**power`` (power may be negative)."""
        if power >= 0:
            return DyadicRational(self.numerator << power, self.exponent)
        return DyadicRational(self.numerator, self.exponent - power)

    def _cmp(self, other: Number) -> int:
        other = DyadicRational.coerce(other)
        a, b, _ = self._aligned(other)
        return (a > b) - (a < b)

    def __eq__(self, other: object) -> bool:
        try:
            return self._cmp(other) == 0  # type: ignore[arg-type]
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, other: Number) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: Number) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: Number) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: Number) -> bool:
        return self._cmp(other) >= 0

    def __hash__(self) -> int:
        return hash(self.to_fraction())

    def __bool__(self) -> bool:
        return self.numerator != 0

    def is_integer(self) -> bool:
        return self.exponent == 0

    def floor(self) -> int:
        return self.numerator >> self.exponent

    def ceil(self) -> int:
        return -((-self.numerator) >> self.exponent)

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def __float__(self) -> float:
        return float(self.to_fraction())

    def __str__(self) -> str:
        if self.exponent == 0:
            return str(self.numerator)
        return f"{self.numerator}/{1 << self.exponent}"

    def __repr__(self) -> str:
        return f"DyadicRational({self.numerator}, {self.exponent})"


ZERO = DyadicRational(0)

"""Exact arithmetic over the extended rationals (Fraction plus +infinity).

Every quantity on a decision path is an ExtRational; floats only appear in
the numerical lab.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from typing import Union

RationalLike = Union["ExtRational", Fraction, int, str]


class ParameterRangeError(ValueError):
    """A numeric parameter is outside its documented range."""


@total_ordering
class ExtRational:
    """A rational number or +infinity, with exact total-ordered arithmetic.

    1/inf evaluates to 0.  inf - inf and 0 * inf are undefined and raise.
    """

    __slots__ = ("_value",)  # Fraction, or None for +infinity

    def __init__(self, value: RationalLike = 0, denominator: int | None = None):
        if denominator is not None:
            self._value: Fraction | None = Fraction(value, denominator)
            return
        if isinstance(value, ExtRational):
            self._value = value._value
        elif isinstance(value, str):
            s = value.strip()
            self._value = None if s in ("inf", "infinity", "oo") else Fraction(s)
        elif isinstance(value, (int, Fraction)):
            self._value = Fraction(value)
        else:
            raise TypeError(f"cannot build ExtRational from {type(value).__name__}")

    @classmethod
    def infinity(cls) -> "ExtRational":
        obj = cls.__new__(cls)
        obj._value = None
        return obj

    @property
    def is_infinite(self) -> bool:
        return self._value is None

    @property
    def is_finite(self) -> bool:
        return self._value is not None

    def as_fraction(self) -> Fraction:
        if self._value is None:
            raise OverflowError("infinite ExtRational has no Fraction value")
        return self._value

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other: RationalLike) -> "ExtRational":
        return other if isinstance(other, ExtRational) else ExtRational(other)

    def __add__(self, other: RationalLike) -> "ExtRational":
        other = self._coerce(other)
        if self.is_infinite or other.is_infinite:
            return ExtRational.infinity()
        return ExtRational(self._value + other._value)

    __radd__ = __add__

    def __sub__(self, other: RationalLike) -> "ExtRational":
        other = self._coerce(other)
        if self.is_infinite and other.is_infinite:
            raise ArithmeticError("inf - inf is undefined")
        if self.is_infinite:
            return ExtRational.infinity()
        if other.is_infinite:
            raise ArithmeticError("finite - inf leaves the extended rationals")
        return ExtRational(self._value - other._value)

    def __rsub__(self, other: RationalLike) -> "ExtRational":
        return self._coerce(other) - self

    def __mul__(self, other: RationalLike) -> "ExtRational":
        other = self._coerce(other)
        if self.is_infinite or other.is_infinite:
            if self == 0 or other == 0:
                raise ArithmeticError("0 * inf is undefined")
            if self < 0 or other < 0:
                raise ArithmeticError("negative * inf leaves the extended rationals")
            return ExtRational.infinity()
        return ExtRational(self._value * other._value)

    __rmul__ = __mul__

    def __truediv__(self, other: RationalLike) -> "ExtRational":
        other = self._coerce(other)
        if other.is_infinite:
            if self.is_infinite:
                raise ArithmeticError("inf / inf is undefined")
            return ExtRational(0)
        if other == 0:
            raise ZeroDivisionError("division by zero")
        if self.is_infinite:
            return ExtRational.infinity()
        return ExtRational(self._value / other._value)

    def __rtruediv__(self, other: RationalLike) -> "ExtRational":
        return self._coerce(other) / self

    def __neg__(self) -> "ExtRational":
        if self.is_infinite:
            raise ArithmeticError("-inf is not representable")
        return ExtRational(-self._value)

    def __abs__(self) -> "ExtRational":
        if self.is_infinite:
            return self
        return ExtRational(abs(self._value))

    # -- comparisons --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (ExtRational, Fraction, int, str)):
            return NotImplemented
        other = self._coerce(other)
        return self._value == other._value

    def __lt__(self, other: RationalLike) -> bool:
        other = self._coerce(other)
        if self.is_infinite:
            return False
        if other.is_infinite:
            return True
        return self._value < other._value

    def __hash__(self) -> int:
        return hash(self._value) if self._value is not None else hash("ext-inf")

    # -- conversion / display ------------------------------------------------

    def __float__(self) -> float:
        return float("inf") if self._value is None else float(self._value)

    def __str__(self) -> str:
        return "inf" if self._value is None else str(self._value)

    def __repr__(self) -> str:
        return f"ExtRational({str(self)!r})"

    @property
    def numerator(self) -> int:
        return self.as_fraction().numerator

    @property
    def denominator(self) -> int:
        return self.as_fraction().denominator

    def is_integer(self) -> bool:
        return self.is_finite and self._value.denominator == 1


INF = ExtRational.infinity()
ZERO = ExtRational(0)


def xr(value: RationalLike, denominator: int | None = None) -> ExtRational:
    """Shorthand constructor."""
    return ExtRational(value, denominator)


def pos_part(x: RationalLike) -> ExtRational:
    """max(0, x), exactly."""
    x = xr(x)
    return x if x > 0 else ZERO


def deficiency(p1: RationalLike, p2: RationalLike, d: int) -> ExtRational:
    """(d/p1 - d/2)_+ + (d/2 - d/p2)_+ with d/inf = 0, exactly.

    This is the threshold the smoothness gap s - t must clear for an
    intermediate Hilbert space to be possible.
    """
    p1, p2 = xr(p1), xr(p2)
    for p in (p1, p2):
        if p < 1:
            raise ParameterRangeError(f"integrability index {p} out of [1, inf]")
    if d < 1:
        raise ParameterRangeError(f"dimension {d} must be a positive integer")
    d_ = xr(d)
    half = d_ / 2
    return pos_part(d_ / p1 - half) + pos_part(half - d_ / p2)

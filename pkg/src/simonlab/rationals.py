"""Exact rational helpers: serialization, falling factorials, certified log2."""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

import mpmath


def fraction_str(x: Fraction) -> str:
    """Render a Fraction as "num/den" (denominator always explicit)."""
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    """Parse "num/den" or a bare integer/decimal string into a Fraction."""
    return Fraction(text.strip())


def falling_factorial(start: int, count: int) -> int:
    """start * (start - 1) * ... * (start - count + 1); empty product is 1."""
    if count < 0:
        raise ValueError("count must be nonnegative")
    out = 1
    for i in range(count):
        out *= start - i
    return out


def power_of_two_exponent(x: Fraction) -> int | None:
    """Return e with x == 2**e, or None when x is not a power of two."""
    if x <= 0:
        return None
    num, den = x.numerator, x.denominator
    if num & (num - 1) or den & (den - 1):
        return None
    return num.bit_length() - den.bit_length()


class Bracket(NamedTuple):
    """A closed rational interval [lo, hi] certified to contain a real value.

    Used wherever an irrational quantity (a log2) enters an otherwise exact
    computation: comparisons are made against the safe endpoint so that a
    pass/fail decision never depends on the unknown part of the bracket.
    """

    lo: Fraction
    hi: Fraction

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __add__(self, other):  # type: ignore[override]
        if isinstance(other, Bracket):
            return Bracket(self.lo + other.lo, self.hi + other.hi)
        other = Fraction(other)
        return Bracket(self.lo + other, self.hi + other)

    __radd__ = __add__

    def __truediv__(self, divisor) -> "Bracket":
        divisor = Fraction(divisor)
        if divisor <= 0:
            raise ValueError("bracket division expects a positive divisor")
        return Bracket(self.lo / divisor, self.hi / divisor)

    def min_with(self, value) -> "Bracket":
        value = Fraction(value)
        return Bracket(min(self.lo, value), min(self.hi, value))

    def certainly_le(self, value) -> bool:
        return self.hi <= value

    def certainly_ge(self, value) -> bool:
        return self.lo >= value

    @staticmethod
    def point(value) -> "Bracket":
        value = Fraction(value)
        return Bracket(value, value)


def _raw_mpf_to_fraction(raw) -> Fraction:
    sign, mantissa, exponent, _ = raw
    value = Fraction(int(mantissa)) * Fraction(2) ** exponent
    return -value if sign else value


def log2_bracket(x: Fraction, bits: int = 40) -> Bracket:
    """Certified bracket of log2(x), exact when x is a power of two.

    For non-powers of two the bracket comes from interval arithmetic run at
    a working precision comfortably beyond `bits`, then is checked to be at
    most 2**-bits wide.
    """
    x = Fraction(x)
    if x <= 0:
        raise ValueError("log2 requires a positive argument")
    exponent = power_of_two_exponent(x)
    if exponent is not None:
        return Bracket.point(Fraction(exponent))
    iv = mpmath.iv
    old_prec = iv.prec
    try:
        iv.prec = max(2 * bits, 80)
        num = iv.log(iv.mpf(x.numerator))
        den = iv.log(iv.mpf(x.denominator))
        result = (num - den) / iv.log(2)
        lo_raw, hi_raw = result._mpi_
    finally:
        iv.prec = old_prec
    bracket = Bracket(_raw_mpf_to_fraction(lo_raw), _raw_mpf_to_fraction(hi_raw))
    if bracket.width > Fraction(1, 2**bits):
        raise ArithmeticError("log2 bracket wider than requested precision")
    return bracket

"""Parsing and rendering of exact rationals for the text interfaces."""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

_RATIONAL_RE = re.compile(r"[+-]?(\d+/\d+|(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)")
_ALLOWED = set("0123456789+-/.eE")


class RationalSyntaxError(ValueError):
    def __init__(self, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"invalid rational {text!r}: unexpected character at position {position}")


def _error_position(s: str) -> int:
    for i, ch in enumerate(s):
        if ch not in _ALLOWED:
            return i
    # longest prefix that is itself a complete literal
    for k in range(len(s), 0, -1):
        if _RATIONAL_RE.fullmatch(s[:k]):
            return k
    return 0


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/r"``, an integer, or a decimal/scientific literal exactly.

    >>> parse_rational("2/3"), parse_rational("1e-9")
    (Fraction(2, 3), Fraction(1, 1000000000))
    """
    s = text.strip()
    if not _RATIONAL_RE.fullmatch(s):
        raise RationalSyntaxError(text, _error_position(s))
    if "/" in s and int(s.split("/")[1]) == 0:
        raise RationalSyntaxError(text, s.index("/") + 1)
    return Fraction(s)


def format_rational(x: Rational) -> str:
    """Render as ``"p/r"`` (plain ``"p"`` for integers); inverse of :func:`parse_rational`."""
    return str(Fraction(x))


def decimal_floor(x: Fraction, digits: int) -> Fraction:
    scale = 10**digits
    return Fraction((x.numerator * scale) // x.denominator, scale)


def decimal_ceil(x: Fraction, digits: int) -> Fraction:
    scale = 10**digits
    return Fraction(-((-x.numerator * scale) // x.denominator), scale)


def format_decimal(x: Fraction, digits: int) -> str:
    """Fixed-point rendering of a dyadic/decimal rational with ``digits`` fractional digits."""
    sign = "-" if x < 0 else ""
    x = abs(x)
    scale = 10**digits
    units = x.numerator * scale // x.denominator
    whole, frac = divmod(units, scale)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"

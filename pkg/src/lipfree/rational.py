"""Parsing and canonical formatting of exact rationals.

Rationals travel through JSON and the command line as ``"p/q"`` strings.
Decimal strings are converted exactly in base 10, never through float.
"""

from __future__ import annotations

from decimal import Decimal, InvalidOperation
from fractions import Fraction
from numbers import Rational


def to_fraction(value) -> Fraction:
    """Convert ints, Fractions, mpq, ``"p/q"`` or decimal strings exactly.

    Floats are accepted only when they are integral; anything else would
    smuggle binary rounding into an exact pipeline.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(int(value.numerator), int(value.denominator))
    if isinstance(value, float):
        if value.is_integer():
            return Fraction(int(value))
        # JSON numbers such as 0.5 arrive as floats; reparse their shortest repr.
        return Fraction(Decimal(repr(value)))
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, _, den = text.partition("/")
            try:
                return Fraction(int(num), int(den))
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"bad rational {value!r}") from exc
        try:
            return Fraction(Decimal(text))
        except (InvalidOperation, ValueError) as exc:
            raise ValueError(f"bad rational {value!r}") from exc
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return Fraction(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot read {type(value).__name__} as a rational")


def fmt(value) -> str:
    """Canonical ``p/q`` text (``p`` alone when q == 1)."""
    q = to_fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"

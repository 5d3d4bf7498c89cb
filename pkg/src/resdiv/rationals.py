"""Exact rational scalars and their text form.

Every coefficient in this package is a ``fractions.Fraction``: arbitrary
precision, always in lowest terms with positive denominator, no floating
point anywhere.  The text form is ``p`` or ``p/q``; decimals are rejected.
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_rational(text: str) -> Fraction:
    """Parse ``p`` or ``p/q`` into an exact Fraction.

    Decimal notation is rejected so that no value can silently pass
    through an inexact representation.
    """
    text = text.strip()
    if not text or "." in text:
        raise ValueError("not an exact rational: %r" % (text,))
    if "/" in text:
        num, _, den = text.partition("/")
        try:
            return Fraction(int(num), int(den))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError("not an exact rational: %r" % (text,)) from exc
    try:
        return Fraction(int(text))
    except ValueError as exc:
        raise ValueError("not an exact rational: %r" % (text,)) from exc


def format_rational(value: Fraction) -> str:
    """Render a Fraction as ``p`` or ``p/q`` (lowest terms)."""
    if value.denominator == 1:
        return str(value.numerator)
    return "%d/%d" % (value.numerator, value.denominator)

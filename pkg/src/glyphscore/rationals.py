"""Exact rational helpers shared by the scoring and serialization layers.

Scores and weights are fractions.Fraction end to end; binary floats never touch
stored or displayed values. Display rounding is half-up at two decimals.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Union

Rational = Union[int, str, Fraction]


def frac(value: Rational | float) -> Fraction:
    """Coerce a value to an exact Fraction.

    Strings accept integers ("5"), decimals ("4.5") and ratios ("29/7").
    Floats go through their shortest decimal repr, so frac(25.5) == 51/2.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a score value")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(str(value))
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty numeric string")
        return Fraction(text)
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def format_minimal(value: Fraction) -> str:
    """Render a Fraction with no spurious digits.

    Terminating decimals print minimally ("5", "4.5", "4.84"); everything else
    prints as "p/q" so round-trips stay exact (e.g. a 7-entry mean "29/7").
    """
    value = Fraction(value)
    num, den = value.numerator, value.denominator
    if den == 1:
        return str(num)
    twos = 0
    d = den
    while d % 2 == 0:
        d //= 2
        twos += 1
    fives = 0
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{num}/{den}"
    places = max(twos, fives)
    scaled = abs(num) * 10**places // den
    digits = str(scaled).rjust(places + 1, "0")
    whole, part = digits[:-places], digits[-places:].rstrip("0")
    sign = "-" if num < 0 else ""
    return f"{sign}{whole}.{part}" if part else f"{sign}{whole}"


def round_half_up(value: Fraction, places: int = 2) -> Fraction:
    """Round to `places` decimals, ties away from zero."""
    value = Fraction(value)
    scale = 10**places
    scaled = value * scale
    if scaled >= 0:
        units = (scaled.numerator * 2 + scaled.denominator) // (2 * scaled.denominator)
    else:
        units = -((-scaled.numerator * 2 + scaled.denominator) // (2 * scaled.denominator))
    return Fraction(units, scale)


def format_display(value: Fraction, places: int = 2) -> str:
    """Fixed-point display string, half-up: format_display(29/7) == "4.14"."""
    rounded = round_half_up(value, places)
    scaled = rounded * 10**places
    units = abs(scaled.numerator) // scaled.denominator
    digits = str(units).rjust(places + 1, "0")
    sign = "-" if rounded < 0 else ""
    if places == 0:
        return f"{sign}{digits}"
    return f"{sign}{digits[:-places]}.{digits[-places:]}"

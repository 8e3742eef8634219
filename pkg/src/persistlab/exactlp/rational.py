"""Parsing and formatting of exact rationals.

Only integer and ``p/q`` literals are accepted; decimal or exponent notation is
rejected so that no value is ever silently rounded.
"""
import re
from fractions import Fraction
from math import gcd

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text):
    """Parse ``"3"``, ``"-7/2"`` or an int/Fraction into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational literal: {text!r}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not an exact rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(value):
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def lcm(a, b):
    return a * b // gcd(a, b)


def primitive_integer_row(values):
    """Scale ``values`` by a positive factor to coprime integers.

    Returns a tuple of ints; the all-zero vector is returned unchanged.
    """
    values = [Fraction(v) for v in values]
    den = 1
    for v in values:
        den = lcm(den, v.denominator)
    ints = [int(v * den) for v in values]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints)

from __future__ import annotations

import math
import re
from fractions import Fraction

_RATIONAL_RE = re.compile(r"^(-?\d+)/(\d+)$")


def format_rational(value: Fraction | int) -> str:
    """Render a rational as ``num/den`` in lowest terms, integers included."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse a strict ``num/den`` string; the fraction must already be in lowest terms."""
    match = _RATIONAL_RE.match(text.strip())
    if match is None:
        raise ValueError(f"Malformed rational: {text!r}")
    num, den = int(match.group(1)), int(match.group(2))
    if den == 0:
        raise ValueError(f"Zero denominator in rational: {text!r}")
    if math.gcd(num, den) != 1:
        raise ValueError(f"Rational not in lowest terms: {text!r}")
    return Fraction(num, den)


def parse_rational_loose(text: str) -> Fraction:
    """Parse user input such as ``3``, ``3/2`` or ``6/4``."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"Malformed rational: {text!r}") from e

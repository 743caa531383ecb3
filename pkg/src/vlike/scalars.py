"""Exact scalar arithmetic and its wire format.

All coefficients in this package are exact rationals (``fractions.Fraction``).
The serialized form used by the CLI and all emitted artifacts is the string
``"p/q"`` with the fraction reduced and ``q > 0``, e.g. ``"-2/3"`` or ``"1/1"``.
"""

from __future__ import annotations

import re
from fractions import Fraction

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def scalar_str(x: Fraction) -> str:
    """Serialize a rational as ``"p/q"`` (reduced, positive denominator)."""
    return f"{x.numerator}/{x.denominator}"


def parse_scalar(value) -> Fraction:
    """Parse an int or a ``"p/q"`` / ``"p"`` string into a Fraction.

    Floats and decimal strings are rejected: every quantity in this package
    is exact and the wire format never carries approximate values.
    """
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_RE.match(text):
            raise ValueError(f"not a rational literal: {value!r}")
        return Fraction(text)
    raise ValueError(f"not a rational: {value!r}")


def coefficient_str(x: Fraction) -> str:
    """Human-readable coefficient: ``"-1"``, ``"2"``, ``"5/3"``."""
    return str(x)

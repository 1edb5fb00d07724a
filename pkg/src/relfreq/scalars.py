"""Scalar handling shared by the exact and approximate computation modes.

A computation runs entirely in one mode, chosen at call time:

* ``"exact"``  -- unbounded-precision rationals (``fractions.Fraction``),
* ``"approx"`` -- plain double-precision floats.

``Fraction`` keeps rationals in lowest terms with a positive denominator,
which is exactly the normal form we need for bit-exact report strings.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Scalar = Union[Fraction, float]

EXACT = "exact"
APPROX = "approx"
MODES = (EXACT, APPROX)


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}, expected one of {MODES}")
    return mode


def as_exact(x) -> Fraction:
    """Coerce to an exact rational. Strings like '3/4' or '0.93' parse exactly."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def as_approx(x) -> float:
    return float(x)


def convert(x, mode: str) -> Scalar:
    return as_exact(x) if mode == EXACT else as_approx(x)


def parse_scalar(text: str) -> Fraction:
    """Parse a decimal or 'num/den' string into an exact rational."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse scalar {text!r}: {exc}") from exc


def rational_str(x: Fraction) -> str:
    """Lowest-terms 'num/den' string (plain integer when the denominator is 1)."""
    x = as_exact(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def is_probability(x) -> bool:
    return 0 <= x <= 1

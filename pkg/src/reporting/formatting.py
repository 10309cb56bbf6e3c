"""Rendering of exact values for tables and terminal output."""

from decimal import Decimal
from fractions import Fraction

DEFAULT_PRECISION = 6


def format_decimal(value: Fraction, places: int = DEFAULT_PRECISION) -> str:
    """Exact value rounded half-even to `places` decimals, e.g. '0.466667'."""
    scaled = round(Fraction(value) * 10 ** places)  # Fraction rounding is exact and half-even
    return f"{Decimal(scaled).scaleb(-places):.{places}f}"


def format_exact(value: Fraction) -> str:
    """Lowest-terms fraction as 'num/den' (always with a denominator)."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"

"""Deterministic decimal rendering of exact rationals.

All tallies and transfer values are Fractions internally; decimals appear
only in serialized output. Rendering must be byte-stable across runs and
platforms, so everything here is integer arithmetic (round half to even,
like Python's round()).
"""

from __future__ import annotations

from fractions import Fraction


def fraction_decimal(value: Fraction, places: int = 6) -> str:
    """Render a Fraction as a fixed-point decimal string with `places` digits."""
    if places < 0:
        raise ValueError("places must be >= 0")
    sign = "-" if value < 0 else ""
    scaled = abs(value) * 10**places
    units = round(scaled)  # exact: round() on a Fraction, half to even
    if places == 0:
        return f"{sign}{units}"
    whole, frac = divmod(units, 10**places)
    return f"{sign}{whole}.{frac:0{places}d}"


def fraction_sigfig(value: Fraction, figures: int = 4) -> str:
    """Render a Fraction rounded to `figures` significant figures, shortest form.

    Trailing zeros after the decimal point are dropped, so Fraction(161, 5000)
    renders as "0.0322" and Fraction(1) as "1".
    """
    if figures < 1:
        raise ValueError("figures must be >= 1")
    if value == 0:
        return "0"
    sign = "-" if value < 0 else ""
    mag = abs(value)
    exponent = _floor_log10(mag)
    places = figures - 1 - exponent
    if places <= 0:
        units = round(mag / 10**-places)
        return f"{sign}{units * 10**-places}"
    text = fraction_decimal(mag, places)
    text = text.rstrip("0").rstrip(".")
    return f"{sign}{text}"


def _floor_log10(value: Fraction) -> int:
    """Exact floor(log10(value)) for positive rationals."""
    n, d = value.numerator, value.denominator
    estimate = len(str(n)) - len(str(d))
    # estimate is within 1 of the true exponent; correct by comparison
    while 10**estimate > value:
        estimate -= 1
    while 10 ** (estimate + 1) <= value:
        estimate += 1
    return estimate


def fraction_json(value: Fraction, places: int = 6) -> dict:
    """num/den plus a fixed-point decimal, the transcript wire form."""
    return {
        "num": value.numerator,
        "den": value.denominator,
        "decimal": fraction_decimal(value, places),
    }

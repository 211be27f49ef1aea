"""Parsing and formatting of exact rationals."""

from __future__ import annotations

import re
from fractions import Fraction

DEFAULT_SNAP_LEVEL = 30

_POW2 = re.compile(r"^\s*([+-]?\d+)\s*/\s*2\s*\^\s*(\d+)\s*$")


def snap(value: Fraction, level: int = DEFAULT_SNAP_LEVEL) -> Fraction:
    """Round ``value`` to the nearest multiple of ``2**-level``."""
    scale = 1 << level
    return Fraction(round(value * scale), scale)


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, ``"p/2^k"``, a decimal string or an int exactly.

    Floats are converted exactly (every float is a dyadic rational); callers
    that need a coarser grid apply :func:`snap` themselves.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, (int, float)):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational: {text!r}")
    m = _POW2.match(text)
    if m:
        return Fraction(int(m.group(1)), 1 << int(m.group(2)))
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def parse_number(value, level: int = DEFAULT_SNAP_LEVEL) -> Fraction:
    """Exact for ``"p/q"`` strings and ints; floats are snapped to ``2**-level``."""
    if isinstance(value, float):
        return snap(Fraction(value), level)
    return parse_rational(value)


def fmt_q(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def q_field(name: str, q) -> dict:
    """``{name: "p/q", name_float: float}`` pair used throughout the reports."""
    return {name: fmt_q(q), f"{name}_float": float(q)}

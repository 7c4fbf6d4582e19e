"""Exact rational helpers shared by every module."""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def to_fraction(value: object) -> Fraction:
    """Convert an exact number to a Fraction.

    Floats and bools are rejected so that no binary rounding can leak in.
    Strings of the form ``"p"`` or ``"p/q"`` are accepted.
    """
    if isinstance(value, bool):
        raise TypeError(f"boolean is not a rational number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}: {value!r}")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(x: Fraction) -> int | str:
    """JSON form: integers stay integers, everything else becomes ``"p/q"``."""
    x = Fraction(x)
    if x.denominator == 1:
        return x.numerator
    return f"{x.numerator}/{x.denominator}"


def is_integral(x: Fraction) -> bool:
    return Fraction(x).denominator == 1


def lcm_of_denominators(values: Iterable[Fraction]) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, Fraction(v).denominator)
    return out


def primitive_integer_vector(values: Sequence[Fraction]) -> tuple[int, ...]:
    """Positive rescaling of ``values`` to a primitive integer vector."""
    scale = lcm_of_denominators(values)
    ints = [int(Fraction(v) * scale) for v in values]
    g = 0
    for i in ints:
        g = math.gcd(g, i)
    if g == 0:
        return tuple(ints)
    return tuple(i // g for i in ints)


def sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


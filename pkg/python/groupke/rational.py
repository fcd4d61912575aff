"""Exact rational scalars and vectors, and their text encodings.

Rationals travel through files as integers or ``"p/q"`` strings; floats are
accepted on input and converted through their shortest decimal repr.
"""

import math
from collections.abc import Iterable, Sequence
from fractions import Fraction
from numbers import Rational

import sympy as sp

from groupke.errors import RationalFormatError

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_fraction(value: object) -> Fraction:
    """Convert an int, Fraction, float or ``"p/q"`` string to a Fraction."""
    if isinstance(value, bool):
        raise RationalFormatError(f"Not a rational number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise RationalFormatError(f"Not a finite number: {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise RationalFormatError(f"Malformed rational: {value!r}") from None
    raise RationalFormatError(f"Not a rational number: {value!r}")


def to_vector(values: Iterable[object]) -> Vector:
    return tuple(to_fraction(v) for v in values)


def zero_vector(dim: int) -> Vector:
    return (ZERO,) * dim


def unit_vector(dim: int, index: int) -> Vector:
    return tuple(ONE if i == index else ZERO for i in range(dim))


def format_rational(value: Fraction) -> str:
    """Render as ``"p"`` or ``"p/q"``."""
    return str(value)


def format_vector(vector: Sequence[Fraction]) -> list[str]:
    return [format_rational(v) for v in vector]


def decimal(value: Fraction | float, digits: int = 12) -> str:
    """Human-readable decimal rendering with ``digits`` significant digits."""
    return f"{float(value):.{digits}g}"


def to_sympy_rational(value: Fraction | int) -> sp.Rational:
    value = Fraction(value)
    return sp.Rational(value.numerator, value.denominator)


def from_sympy_rational(value: sp.Expr) -> Fraction:
    value = sp.Rational(value)
    return Fraction(int(value.p), int(value.q))

"""Arithmetic modes, tolerances and number conversion.

Two modes exist.  ``"rational"`` stores every coordinate as a
:class:`fractions.Fraction` and makes all predicates exact.  ``"float"`` uses
Python floats and compares against the tolerances below.  Objects carry their
mode; combining objects of different modes raises :class:`ArithmeticModeError`.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational, Real

RATIONAL = "rational"
FLOAT = "float"
MODES = (RATIONAL, FLOAT)

#: point classification tolerance (absolute, signed distance) in float mode
TAU_PT = 1e-9
#: relative volume tolerance in float mode
TAU_VOL = 1e-9


class ArithmeticModeError(ValueError):
    """Raised when rational and floating objects are mixed."""


def check_mode(mode):
    if mode not in MODES:
        raise ArithmeticModeError(f"unknown arithmetic mode {mode!r}; expected one of {MODES}")
    return mode


def parse_number(value, mode):
    """Convert ``value`` (int, float, Fraction or ``"p/q"`` string) to ``mode``.

    Floats entering rational mode are read through their shortest decimal
    repr, so ``1.2`` becomes ``6/5`` rather than the nearest dyadic.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if mode == RATIONAL:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, float):
            if not math.isfinite(value):
                raise ValueError(f"non-finite coordinate {value!r}")
            return Fraction(repr(value))
        if isinstance(value, str):
            return Fraction(value.strip())
        if isinstance(value, Rational):
            return Fraction(value.numerator, value.denominator)
        if isinstance(value, Real):
            return Fraction(repr(float(value)))
        raise TypeError(f"cannot read {value!r} as a number")
    if mode == FLOAT:
        if isinstance(value, str):
            value = Fraction(value.strip())
        out = float(value)
        if not math.isfinite(out):
            raise ValueError(f"non-finite coordinate {value!r}")
        return out
    raise ArithmeticModeError(f"unknown arithmetic mode {mode!r}")


def parse_point(values, mode):
    return tuple(parse_number(v, mode) for v in values)


def mode_of(value):
    return RATIONAL if isinstance(value, (Fraction, int)) else FLOAT


def format_number(value):
    """Canonical text of a number: ``"p/q"`` for rationals, 17 significant digits for floats."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return str(value)
    return format(float(value), ".17g")


def rationalize(x, max_denominator=10**6):
    """Nearest fraction to ``x`` with a bounded denominator."""
    return Fraction(x).limit_denominator(max_denominator)


def simplest_between(lo, hi):
    """Simplest rational strictly inside the open interval ``(lo, hi)``.

    Walks the continued-fraction expansions of both ends (Stern-Brocot
    descent).  Small denominators keep later exact computations cheap.
    """
    if not lo < hi:
        raise ValueError("empty interval")
    lo, hi = Fraction(lo), Fraction(hi)
    fl = math.floor(lo)
    if fl + 1 < hi:
        # an integer fits strictly inside; choose the one nearest zero
        if lo < 0 < hi:
            return Fraction(0)
        return Fraction(fl + 1) if lo >= 0 else Fraction(math.ceil(hi) - 1)
    if fl + 1 == hi and lo == fl:
        return (lo + hi) / 2
    # lo and hi share the integer part fl (or hi is exactly fl+1)
    # recurse on reciprocals of the fractional parts, swapped
    a = lo - fl
    b = hi - fl
    if a == 0:
        # interval (fl, fl + b) with b <= 1: 1/(n) style descent
        n = math.floor(1 / b) + 1
        return fl + Fraction(1, n)
    inner = simplest_between(1 / b, 1 / a)
    return fl + 1 / inner


def sqrt_float(x):
    return math.sqrt(float(x))

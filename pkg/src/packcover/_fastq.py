"""Optional gmpy2 rationals for the hot loops of the exact sweep.

The sweep only needs field operations and comparisons, which ``gmpy2.mpq``
provides an order of magnitude faster than :class:`fractions.Fraction`.
Results are converted back before leaving the torus module.
"""
from fractions import Fraction

try:
    from gmpy2 import mpq
except ImportError:  # pragma: no cover
    mpq = None


def to_fast_scalar(x):
    if mpq is None:
        return x
    return mpq(x.numerator, x.denominator)


def to_fast(p):
    return tuple(to_fast_scalar(c) for c in p)


def from_fast(x):
    if mpq is None or isinstance(x, (Fraction, int)):
        return Fraction(x)
    return Fraction(int(x.numerator), int(x.denominator))

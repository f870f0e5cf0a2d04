"""Conversions between exact rationals and mpmath floats.

Transcendental values enter the package only through :func:`to_dyadic`,
which rounds an mpmath number to a dyadic rational of a given width.
"""

from contextlib import contextmanager
from fractions import Fraction

import mpmath
from mpmath import mp

GUARD_BITS = 32


def to_mpf(q) -> mpmath.mpf:
    """Round a rational to an mpf at the current working precision."""
    if isinstance(q, (mpmath.mpf, mpmath.mpc)):
        return q
    if isinstance(q, float):
        return mpmath.mpf(q)
    q = Fraction(q)
    if q.denominator == 1:
        return mpmath.mpf(q.numerator)
    return mpmath.mpf(q.numerator) / q.denominator


def _mpf_to_fraction(v) -> Fraction:
    if not mpmath.isfinite(v):
        raise ValueError(f"non-finite value {v}")
    sign, man, exp, _ = v._mpf_
    man = -int(man) if sign else int(man)
    if exp >= 0:
        return Fraction(man << exp)
    return Fraction(man, 1 << -exp)


def to_dyadic(value, bits: int) -> Fraction:
    """Round a real (mpf, float, int) to ``bits`` significant bits, exactly as a Fraction."""
    if isinstance(value, Fraction):
        with mp.workprec(bits + GUARD_BITS):
            value = to_mpf(value)
    with mp.workprec(bits):
        rounded = +mpmath.mpf(value)
    return _mpf_to_fraction(rounded)


@contextmanager
def working_precision(bits: int):
    with mp.workprec(bits + GUARD_BITS):
        yield

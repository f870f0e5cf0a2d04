"""Non-Diophantine complex numbers and the elementary functions Cos, Sin, Exp.

An :class:`NDComplex` is a pair ``(A1, A2)`` of elements of the same
context, with

    A (+) B = (A1 (+) B1, A2 (+) B2)
    A (*) B = (A1 (*) B1 (-) A2 (*) B2, A1 (*) B2 (+) A2 (*) B1)

A real element ``A1`` is identified with ``(A1, 0')``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from ._mp import to_dyadic, to_mpf, working_precision
from .arithmetic import (
    ArithmeticContext,
    NDNumber,
    factorial_prime,
    one_prime,
    pow_nat,
    zero_prime,
)
from .errors import ContextMismatch, DomainError


@dataclass(frozen=True)
class NDComplex:
    re: NDNumber
    im: NDNumber

    def __post_init__(self):
        if self.re.context != self.im.context:
            raise ContextMismatch("real and imaginary parts need the same context")

    @property
    def context(self) -> ArithmeticContext:
        return self.re.context

    @classmethod
    def of(cls, value) -> "NDComplex":
        """Promote an NDNumber ``A1`` to ``(A1, 0')``."""
        if isinstance(value, NDComplex):
            return value
        if isinstance(value, NDNumber):
            return cls(value, zero_prime(value.context))
        raise TypeError(f"cannot promote {type(value).__name__} to NDComplex")

    @classmethod
    def from_lower(cls, ctx: ArithmeticContext, re, im=0) -> "NDComplex":
        return cls(NDNumber(ctx, re), NDNumber(ctx, im))

    @property
    def lower(self) -> complex:
        """Lowercase coordinates as a Python complex (for display and tolerances)."""
        return complex(float(self.re.lower), float(self.im.lower))

    def __add__(self, other):
        return cadd(self, other)

    def __radd__(self, other):
        return cadd(other, self)

    def __sub__(self, other):
        other = NDComplex.of(other)
        return NDComplex(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        return cmul(self, other)

    def __rmul__(self, other):
        return cmul(other, self)

    def __neg__(self):
        return NDComplex(-self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, NDNumber):
            other = NDComplex.of(other)
        if not isinstance(other, NDComplex):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def close_to(self, other, tol) -> bool:
        other = NDComplex.of(other)
        return self.re.close_to(other.re, tol) and self.im.close_to(other.im, tol)

    def to_json(self) -> dict:
        return {"re": self.re.to_json(), "im": self.im.to_json()}


def i_prime(ctx: ArithmeticContext) -> NDComplex:
    """The imaginary unit ``i' = (0', 1')``."""
    return NDComplex(zero_prime(ctx), one_prime(ctx))


def cadd(A, B) -> NDComplex:
    A, B = NDComplex.of(A), NDComplex.of(B)
    return NDComplex(A.re + B.re, A.im + B.im)


def cmul(A, B) -> NDComplex:
    A, B = NDComplex.of(A), NDComplex.of(B)
    return NDComplex(A.re * B.re - A.im * B.im, A.re * B.im + A.im * B.re)


def conj(A) -> NDComplex:
    A = NDComplex.of(A)
    return NDComplex(A.re, -A.im)


def modulus_sq(A) -> NDNumber:
    """``|A|^{2'} = A1^{2'} (+) A2^{2'}``, the real part of ``A (*) A*``."""
    A = NDComplex.of(A)
    product = cmul(A, conj(A))
    assert product.im.lower == 0
    return product.re


def _transcendental(fn, X: NDNumber) -> NDNumber:
    bits = X.context.precision_bits
    with working_precision(bits):
        value = fn(to_mpf(X.lower))
    return NDNumber(X.context, to_dyadic(value, bits))


def nd_cos(X: NDNumber) -> NDNumber:
    """``Cos X = f^-1(cos f(X))``, rounded to the context's precision."""
    return _transcendental(mpmath.cos, X)


def nd_sin(X: NDNumber) -> NDNumber:
    return _transcendental(mpmath.sin, X)


def nd_exp(X: NDNumber) -> NDNumber:
    return _transcendental(mpmath.exp, X)


def cexp_i(phi: NDNumber) -> NDComplex:
    """``Exp(i' phi) = (Cos phi, Sin phi)``."""
    return NDComplex(nd_cos(phi), nd_sin(phi))


class SeriesKind(enum.Enum):
    COS = "cos"
    SIN = "sin"
    EXP = "exp"


def taylor_partial(kind, X: NDNumber, terms: int) -> NDNumber:
    """(+)-sum of the first ``terms`` nonzero Taylor terms of Cos, Sin or Exp.

    Built only from ``pow_nat``, ``factorial_prime``, (-) and (/), so the
    result is exact in lowercase coordinates.  The alternating sign of the
    Cos and Sin series is ``((-)1')^{k'}``.
    """
    kind = SeriesKind(kind.value if isinstance(kind, SeriesKind) else str(kind).lower())
    if terms < 1:
        raise DomainError("taylor_partial needs at least one term")
    ctx = X.context
    minus_one = -one_prime(ctx)
    total = zero_prime(ctx)
    for k in range(terms):
        if kind is SeriesKind.EXP:
            total = total + pow_nat(X, k) / factorial_prime(ctx, k)
            continue
        power = 2 * k if kind is SeriesKind.COS else 2 * k + 1
        term = pow_nat(minus_one, k) * pow_nat(X, power) / factorial_prime(ctx, power)
        total = total + term
    return total


def remainder_bound(kind, x: Fraction, terms: int) -> Fraction:
    """Upper bound on ``|closed form - taylor_partial|`` in lowercase coordinates.

    Lagrange remainder: ``|x|^n / n!`` times ``max(1, e^x)`` for Exp, with
    ``n`` the first omitted power.
    """
    kind = SeriesKind(kind.value if isinstance(kind, SeriesKind) else str(kind).lower())
    x = Fraction(x)
    if kind is SeriesKind.EXP:
        n = terms
        growth = Fraction(3) ** max(0, math.ceil(x)) if x > 0 else 1
    else:
        n = 2 * terms if kind is SeriesKind.COS else 2 * terms + 1
        growth = 1
    return abs(x) ** n / math.factorial(n) * growth

"""Non-Diophantine arithmetic over a bijection ``f: X -> R``.

An :class:`ArithmeticContext` supplies ``f`` (``forward``) and its inverse.
An :class:`NDNumber` stores the lowercase coordinate ``f(X)`` as an exact
rational, so the four operations reduce to exact rational arithmetic:

    X (+) Y = f^-1(f(X) + f(Y))

and likewise for (-), (*), (/).  The element ``X`` itself (the uppercase
coordinate) is computed on demand and cached.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import mpmath

from . import exact_digits
from ._mp import to_dyadic, to_mpf, working_precision
from .errors import ContextMismatch, DivisionByZeroPrime, DomainError
from .exact_digits import Branch

DEFAULT_PRECISION_BITS = 128


@dataclass(frozen=True)
class ArithmeticContext:
    """A bijection ``f`` together with the precision used for transcendental values.

    Subclasses implement :meth:`forward` (``f``) and :meth:`inverse`
    (``f^-1``).  Contexts compare by value, so two contexts built from the
    same parameters interoperate.
    """

    precision_bits: int = field(default=DEFAULT_PRECISION_BITS, kw_only=True)

    #: True when both directions map rationals to rationals without rounding.
    exact = True

    def forward(self, X) -> Fraction:
        raise NotImplementedError

    def inverse(self, x) -> Fraction:
        raise NotImplementedError

    @property
    def spec(self) -> str:
        """Short text form understood by :func:`parse_context`."""
        raise NotImplementedError

    def with_precision(self, bits: int) -> "ArithmeticContext":
        from dataclasses import replace

        return replace(self, precision_bits=bits)

    def number(self, lower) -> "NDNumber":
        """The element whose lowercase coordinate is ``lower``."""
        return NDNumber(self, lower)

    def element(self, upper) -> "NDNumber":
        """The element ``X`` given in uppercase coordinates."""
        return NDNumber.from_upper(self, upper)

    def __str__(self):
        return self.spec


@dataclass(frozen=True)
class Identity(ArithmeticContext):
    """``f(x) = x``: ordinary arithmetic."""

    def forward(self, X):
        return Fraction(X)

    def inverse(self, x):
        return Fraction(x)

    @property
    def spec(self):
        return "identity"


@dataclass(frozen=True)
class Benioff(ArithmeticContext):
    """Number scaling ``f(x) = p x``."""

    p: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "p", Fraction(self.p))
        if self.p == 0:
            raise ValueError("Benioff scale p must be nonzero")

    def forward(self, X):
        return self.p * Fraction(X)

    def inverse(self, x):
        return Fraction(x) / self.p

    @property
    def spec(self):
        return f"benioff:p={self.p}"


@dataclass(frozen=True)
class Fechner(ArithmeticContext):
    """``f(x) = a ln x + b`` on the positive reals.

    Both directions are transcendental and return dyadic approximations
    rounded to ``precision_bits`` significant bits.
    """

    a: Fraction = Fraction(1)
    b: Fraction = Fraction(0)
    exact = False

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.a == 0:
            raise ValueError("Fechner coefficient a must be nonzero")

    def forward(self, X):
        X = Fraction(X)
        if X <= 0:
            raise DomainError(f"Fechner map is defined on positive reals, got {X}")
        with working_precision(self.precision_bits):
            v = to_mpf(self.a) * mpmath.log(to_mpf(X)) + to_mpf(self.b)
            return to_dyadic(v, self.precision_bits)

    def inverse(self, x):
        with working_precision(self.precision_bits):
            v = mpmath.exp((to_mpf(x) - to_mpf(self.b)) / to_mpf(self.a))
            return to_dyadic(v, self.precision_bits)

    @property
    def spec(self):
        return f"fechner:a={self.a},b={self.b}"


@dataclass(frozen=True)
class TernaryLine(ArithmeticContext):
    """The ternary Cantor line: unit-cell Cantor sets translated by every integer."""

    branch: Branch = Branch.MINUS

    def forward(self, X):
        return exact_digits.ternary_line_forward(X, self.branch)

    def inverse(self, x):
        return exact_digits.ternary_line_inverse(x, self.branch)

    @property
    def spec(self):
        return f"ternary-line:{self.branch.value}"


@dataclass(frozen=True)
class QuaternaryCantor(ArithmeticContext):
    """The quaternary Cantor set extended to the line by scaling and antisymmetry."""

    branch: Branch = Branch.PLUS

    def forward(self, X):
        return exact_digits.scaled_forward(X, 4, self.branch)

    def inverse(self, x):
        return exact_digits.scaled_inverse(x, 4, self.branch)

    @property
    def spec(self):
        return f"quaternary:{self.branch.value}"


@dataclass(frozen=True)
class MiddleThirdSelfSimilar(ArithmeticContext):
    """Self-similar middle-third set: whole binary expansion doubled and read in base 3."""

    branch: Branch = Branch.PLUS

    def forward(self, X):
        return exact_digits.scaled_forward(X, 3, self.branch)

    def inverse(self, x):
        return exact_digits.scaled_inverse(x, 3, self.branch)

    @property
    def spec(self):
        if self.branch is Branch.PLUS:
            return "middle-third"
        return f"middle-third:{self.branch.value}"


def _parse_kv(body: str) -> dict:
    out = {}
    for item in filter(None, (s.strip() for s in body.split(","))):
        key, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"expected key=value, got {item!r}")
        out[key.strip()] = Fraction(value.strip())
    return out


def parse_context(text: str, precision_bits: int = DEFAULT_PRECISION_BITS) -> ArithmeticContext:
    """Build a context from ``identity``, ``benioff:p=2``, ``fechner:a=1,b=0``,
    ``ternary-line:minus``, ``quaternary:plus`` or ``middle-third``."""
    name, _, body = text.strip().partition(":")
    name = name.lower()
    try:
        if name == "identity" and not body:
            return Identity(precision_bits=precision_bits)
        if name == "benioff":
            kv = _parse_kv(body)
            p = kv.pop("p")
            return _bad(text) if kv else Benioff(p, precision_bits=precision_bits)
        if name == "fechner":
            kv = _parse_kv(body)
            a, b = kv.pop("a", Fraction(1)), kv.pop("b", Fraction(0))
            return _bad(text) if kv else Fechner(a, b, precision_bits=precision_bits)
        if name == "ternary-line":
            return TernaryLine(Branch.parse(body or "minus"), precision_bits=precision_bits)
        if name == "quaternary":
            return QuaternaryCantor(Branch.parse(body or "plus"), precision_bits=precision_bits)
        if name == "middle-third":
            return MiddleThirdSelfSimilar(Branch.parse(body or "plus"), precision_bits=precision_bits)
    except (KeyError, ZeroDivisionError) as exc:
        raise ValueError(f"bad bijection parameters in {text!r}") from exc
    raise ValueError(f"unknown bijection {text!r}")


def _bad(text):
    raise ValueError(f"unexpected parameters in {text!r}")


def builtin_contexts(precision_bits: int = DEFAULT_PRECISION_BITS):
    """One instance of every built-in bijection, for sweeping tests and self-checks."""
    return [
        Identity(precision_bits=precision_bits),
        Benioff(Fraction(3, 2), precision_bits=precision_bits),
        Fechner(Fraction(2), Fraction(1, 3), precision_bits=precision_bits),
        TernaryLine(Branch.MINUS, precision_bits=precision_bits),
        TernaryLine(Branch.PLUS, precision_bits=precision_bits),
        QuaternaryCantor(Branch.PLUS, precision_bits=precision_bits),
        QuaternaryCantor(Branch.MINUS, precision_bits=precision_bits),
        MiddleThirdSelfSimilar(precision_bits=precision_bits),
    ]


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, float)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


class NDNumber:
    """An element of X, stored by its lowercase coordinate ``f(X)``.

    The operators ``+ - * /`` are the non-Diophantine operations, so
    ``X + Y`` means ``X (+) Y``.  Equality is exact on the lowercase
    coordinate.
    """

    __slots__ = ("context", "lower", "__dict__")

    def __init__(self, context: ArithmeticContext, lower):
        self.context = context
        self.lower = _as_fraction(lower)

    @classmethod
    def from_upper(cls, context: ArithmeticContext, upper) -> "NDNumber":
        upper = _as_fraction(upper)
        number = cls(context, context.forward(upper))
        number.__dict__["upper"] = upper
        return number

    @cached_property
    def upper(self) -> Fraction:
        """The element itself, ``f^-1(lower)``."""
        return self.context.inverse(self.lower)

    def _check(self, other) -> "NDNumber":
        if not isinstance(other, NDNumber):
            return NotImplemented
        if other.context != self.context:
            raise ContextMismatch(f"{self.context} vs {other.context}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return NDNumber(self.context, self.lower + other.lower)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return NDNumber(self.context, self.lower - other.lower)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return NDNumber(self.context, self.lower * other.lower)

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if other.lower == 0:
            raise DivisionByZeroPrime("division by 0'")
        return NDNumber(self.context, self.lower / other.lower)

    def __neg__(self):
        return NDNumber(self.context, -self.lower)

    def __eq__(self, other):
        if not isinstance(other, NDNumber):
            return NotImplemented
        return self.context == other.context and self.lower == other.lower

    def __hash__(self):
        return hash((self.context, self.lower))

    def __repr__(self):
        return f"NDNumber({self.context.spec}, lower={self.lower})"

    def close_to(self, other: "NDNumber", tol) -> bool:
        """Explicit approximate comparison on lowercase coordinates."""
        self._check(other)
        return abs(self.lower - other.lower) <= Fraction(tol)

    def to_json(self) -> dict:
        return {"context": self.context.spec, "lower": str(self.lower), "upper": str(self.upper)}

    @classmethod
    def from_json(cls, record: dict, precision_bits: int = DEFAULT_PRECISION_BITS) -> "NDNumber":
        ctx = parse_context(record["context"], precision_bits)
        number = cls(ctx, Fraction(record["lower"]))
        if "upper" in record:
            number.__dict__["upper"] = Fraction(record["upper"])
        return number


def _same(X: NDNumber, Y: NDNumber):
    if X.context != Y.context:
        raise ContextMismatch(f"{X.context} vs {Y.context}")


def add(X: NDNumber, Y: NDNumber) -> NDNumber:
    _same(X, Y)
    return X + Y


def sub(X: NDNumber, Y: NDNumber) -> NDNumber:
    _same(X, Y)
    return X - Y


def mul(X: NDNumber, Y: NDNumber) -> NDNumber:
    _same(X, Y)
    return X * Y


def div(X: NDNumber, Y: NDNumber) -> NDNumber:
    _same(X, Y)
    return X / Y


def zero_prime(ctx: ArithmeticContext) -> NDNumber:
    """``0' = f^-1(0)``, the neutral element of (+)."""
    return NDNumber(ctx, 0)


def one_prime(ctx: ArithmeticContext) -> NDNumber:
    """``1' = f^-1(1)``, the neutral element of (*)."""
    return NDNumber(ctx, 1)


def neg(X: NDNumber) -> NDNumber:
    """``(-)X = 0' (-) X``."""
    return -X


def nat(ctx: ArithmeticContext, n: int) -> NDNumber:
    """``n' = f^-1(n)``."""
    return NDNumber(ctx, int(n))


def pow_nat(X: NDNumber, n: int) -> NDNumber:
    """``X^{n'}``, the n-fold (*) product of X (``1'`` for n = 0)."""
    if n < 0:
        raise DomainError("pow_nat needs n >= 0")
    return NDNumber(X.context, X.lower**n)


def factorial_prime(ctx: ArithmeticContext, n: int) -> NDNumber:
    """``n!' = 1' (*) 2' (*) ... (*) n' = f^-1(n!)``."""
    if n < 0:
        raise DomainError("factorial_prime needs n >= 0")
    return NDNumber(ctx, math.factorial(n))

"""Scalar product, trigonometric basis, Fourier series and frequency spectra.

The scalar product of ``A = f^-1 o a o f`` and ``B = f^-1 o b o f`` over the
period ``[(-)T(/)2', T(/)2']`` is

    <A|B> = f^-1(Re <a|b>) (+) i' f^-1(Im <a|b>)

where ``<a|b>`` is the ordinary L2 product on ``[-f(T)/2, f(T)/2]``.  The
basis ``C_n = f^-1 o c_n o f``, ``S_n = f^-1 o s_n o f`` is built from the
orthonormal cosines and sines ``c_n``, ``s_n`` of period ``f(T)``.
"""

from __future__ import annotations

import decimal
import enum
import math
from functools import lru_cache
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import List

import mpmath
import numpy as np

from ._mp import to_mpf
from .arithmetic import (
    ArithmeticContext,
    Identity,
    MiddleThirdSelfSimilar,
    NDNumber,
    QuaternaryCantor,
    TernaryLine,
    nat,
    parse_context,
    zero_prime,
)
from .calculus import NDFunction, _wrap_float, constant, harmonic
from .errors import ContextMismatch, DomainError, UnsupportedContext
from .exact_digits import to_digits
from .ndcomplex import NDComplex, cmul, conj
from .quadrature import DEFAULT_QUADRATURE, QuadratureSpec, integrate

SCHEMA_VERSION = 1


class BasisKind(enum.Enum):
    COS = "cos"
    SIN = "sin"


@dataclass(frozen=True)
class BasisIndex:
    kind: BasisKind
    n: int

    def __post_init__(self):
        object.__setattr__(self, "kind", BasisKind(getattr(self.kind, "value", self.kind)))
        if self.n < 0 or (self.kind is BasisKind.SIN and self.n == 0):
            raise DomainError(f"invalid basis index {self.kind.value}_{self.n}")


def _period(T_lower) -> Fraction:
    T = Fraction(T_lower)
    if T <= 0:
        raise DomainError("period f(T) must be positive")
    return T


def basis_fn(idx: BasisIndex, T_lower, ctx: ArithmeticContext) -> NDFunction:
    """``C_n`` or ``S_n``: ``sqrt(2/f(T)) cos(2 n pi x / f(T))`` etc. conjugated by ``f``.

    ``C_0`` is the constant ``sqrt(1/f(T))``.
    """
    T = _period(T_lower)
    if idx.kind is BasisKind.COS and idx.n == 0:
        fn = constant(ctx, lambda: mpmath.sqrt(1 / to_mpf(T)))
        return _describe(fn, "C_0")
    n = idx.n

    def k():
        return 2 * n * mpmath.pi / to_mpf(T)

    def amp():
        return mpmath.sqrt(2 / to_mpf(T))

    fn = harmonic(ctx, idx.kind.value, k, amp)
    return _describe(fn, f"{'C' if idx.kind is BasisKind.COS else 'S'}_{n}")


def _describe(fn: NDFunction, text: str) -> NDFunction:
    return replace(fn, description=text)


@lru_cache(maxsize=1024)
def cos_basis(n: int, T_lower, ctx) -> NDFunction:
    return basis_fn(BasisIndex(BasisKind.COS, n), T_lower, ctx)


@lru_cache(maxsize=1024)
def sin_basis(n: int, T_lower, ctx) -> NDFunction:
    return basis_fn(BasisIndex(BasisKind.SIN, n), T_lower, ctx)


def scalar_product(A: NDFunction, B: NDFunction, T_lower, quadrature: QuadratureSpec = DEFAULT_QUADRATURE) -> NDComplex:
    """``<A|B>`` by quadrature of ``conj(a) b`` over one lowercase period."""
    if A.context != B.context:
        raise ContextMismatch(f"{A.context} vs {B.context}")
    T = _period(T_lower)
    half = float(T) / 2
    breaks = (*A.breakpoints(-half, half), *B.breakpoints(-half, half))
    if A.is_complex or B.is_complex:
        value = integrate(lambda x: np.conj(A.lower_vec(x)) * B.lower_vec(x), -half, half, quadrature, breaks)
        return _wrap_float(A.context, complex(value), True)
    value = integrate(lambda x: A.lower_vec(x) * B.lower_vec(x), -half, half, quadrature, breaks)
    return NDComplex.of(_wrap_float(A.context, value, False))


@dataclass
class FourierSeries:
    """Coefficients ``<C_n|A>`` (n >= 0) and ``<S_n|A>`` (n >= 1), stored lowercase-exact.

    ``sin_coeffs[n - 1]`` holds ``<S_n|A>``; use :meth:`sin_coeff` to index by ``n``.
    """

    context: ArithmeticContext
    period_lower: Fraction
    cos_coeffs: List[NDNumber]
    sin_coeffs: List[NDNumber]
    signal: str = ""
    quadrature: QuadratureSpec = field(default=DEFAULT_QUADRATURE)

    def __post_init__(self):
        self.period_lower = _period(self.period_lower)
        if len(self.sin_coeffs) != max(len(self.cos_coeffs) - 1, 0):
            raise ValueError("need one sine coefficient for each n = 1..n_max")

    @property
    def n_max(self) -> int:
        return len(self.cos_coeffs) - 1

    def cos_coeff(self, n: int) -> NDNumber:
        return self.cos_coeffs[n]

    def sin_coeff(self, n: int) -> NDNumber:
        if n == 0:
            return zero_prime(self.context)
        return self.sin_coeffs[n - 1]

    def to_json(self, display_digits: int = 20) -> dict:
        def record(n, c):
            return {"n": n, "lower": str(c.lower), "upper": decimal_string(c.upper, display_digits)}

        return {
            "schema_version": SCHEMA_VERSION,
            "context": self.context.spec,
            "precision_bits": self.context.precision_bits,
            "f_T": str(self.period_lower),
            "n_max": self.n_max,
            "signal": self.signal,
            "display_digits": display_digits,
            "quadrature": {
                "nodes": self.quadrature.nodes,
                "panels": self.quadrature.panels,
                "tol": self.quadrature.tol,
            },
            "cos": [record(n, c) for n, c in enumerate(self.cos_coeffs)],
            "sin": [record(n, c) for n, c in enumerate(self.sin_coeffs, start=1)],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "FourierSeries":
        if doc.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {doc.get('schema_version')!r}")
        ctx = parse_context(doc["context"], int(doc.get("precision_bits", 128)))
        q = doc.get("quadrature") or {}
        quad = QuadratureSpec(
            nodes=int(q.get("nodes", DEFAULT_QUADRATURE.nodes)),
            panels=int(q.get("panels", DEFAULT_QUADRATURE.panels)),
            tol=float(q.get("tol", DEFAULT_QUADRATURE.tol)),
        )
        cos = sorted(doc["cos"], key=lambda r: r["n"])
        sin = sorted(doc["sin"], key=lambda r: r["n"])
        if [r["n"] for r in cos] != list(range(len(cos))) or [r["n"] for r in sin] != list(range(1, len(sin) + 1)):
            raise ValueError("coefficient indices are not contiguous")
        return cls(
            ctx,
            Fraction(doc["f_T"]),
            [NDNumber(ctx, Fraction(r["lower"])) for r in cos],
            [NDNumber(ctx, Fraction(r["lower"])) for r in sin],
            signal=doc.get("signal", ""),
            quadrature=quad,
        )


def analyze(A: NDFunction, T_lower, n_max: int, quadrature: QuadratureSpec = DEFAULT_QUADRATURE, signal: str = "") -> FourierSeries:
    """Real Fourier coefficients ``<C_n|A>``, ``<S_n|A>`` for ``n <= n_max``."""
    if A.is_complex:
        raise DomainError("analyze expects a real-valued function; use transform_hat for complex ones")
    if n_max < 0:
        raise DomainError("n_max must be non-negative")
    ctx, T = A.context, _period(T_lower)
    cos = [scalar_product(cos_basis(n, T, ctx), A, T, quadrature).re for n in range(n_max + 1)]
    sin = [scalar_product(sin_basis(n, T, ctx), A, T, quadrature).re for n in range(1, n_max + 1)]
    return FourierSeries(ctx, T, cos, sin, signal=signal or A.description, quadrature=quadrature)


def reconstruct(S: FourierSeries, X: NDNumber, terms: int) -> NDNumber:
    """(+)-partial sum ``(+)_{n<=terms} C_n(X) (*) <C_n|A> (+) S_n(X) (*) <S_n|A>``."""
    if X.context != S.context:
        raise ContextMismatch(f"{X.context} vs {S.context}")
    if not 0 <= terms <= S.n_max:
        raise DomainError(f"terms must be in [0, {S.n_max}]")
    ctx, T = S.context, S.period_lower
    total = zero_prime(ctx)
    for n in range(terms + 1):
        total = total + cos_basis(n, T, ctx)(X) * S.cos_coeff(n)
        if n:
            total = total + sin_basis(n, T, ctx)(X) * S.sin_coeff(n)
    return total


def reconstruct_lower(S: FourierSeries, xs, terms: int) -> np.ndarray:
    """Vectorized double-precision partial sums at lowercase points ``xs``."""
    if not 0 <= terms <= S.n_max:
        raise DomainError(f"terms must be in [0, {S.n_max}]")
    xs = np.asarray(xs, dtype=float)
    T = float(S.period_lower)
    out = np.full(xs.shape, float(S.cos_coeff(0).lower) / math.sqrt(T))
    amp = math.sqrt(2 / T)
    for n in range(1, terms + 1):
        arg = 2 * n * math.pi * xs / T
        out += amp * (float(S.cos_coeff(n).lower) * np.cos(arg) + float(S.sin_coeff(n).lower) * np.sin(arg))
    return out


def parseval_check(A: NDFunction, B: NDFunction, S_A: FourierSeries, S_B: FourierSeries):
    """Both sides of ``<A|B> = (+)_n <A|C_n>(*)<C_n|B> (+) <A|S_n>(*)<S_n|B>``.

    The right side runs to the smaller ``n_max`` of the two series; the
    caller judges closeness against the truncated tail.
    """
    if S_A.period_lower != S_B.period_lower:
        raise DomainError("series were computed on different periods")
    lhs = scalar_product(A, B, S_A.period_lower, S_A.quadrature)
    ctx = S_A.context
    rhs = NDComplex.of(zero_prime(ctx))
    for n in range(min(S_A.n_max, S_B.n_max) + 1):
        rhs = rhs + cmul(conj(S_A.cos_coeff(n)), S_B.cos_coeff(n))
        rhs = rhs + cmul(conj(S_A.sin_coeff(n)), S_B.sin_coeff(n))
    return lhs, rhs


def transform_hat(A: NDFunction, K: NDNumber, T_lower, quadrature: QuadratureSpec = DEFAULT_QUADRATURE) -> NDComplex:
    """Complex transform ``int A(X) (*) Exp((-)i' K (*) X) DX`` over one period."""
    if K.context != A.context:
        raise ContextMismatch(f"{K.context} vs {A.context}")
    half = float(_period(T_lower)) / 2
    k = float(K.lower)
    value = integrate(
        lambda x: A.lower_vec(x) * np.exp(-1j * k * x), -half, half, quadrature, A.breakpoints(-half, half)
    )
    return _wrap_float(A.context, complex(value), True)


_SPECTRUM_CONTEXTS = (TernaryLine, QuaternaryCantor, MiddleThirdSelfSimilar, Identity)


def spectrum_n_prime(ctx: ArithmeticContext, n: int) -> Fraction:
    """The frequency label ``n' = f^-1(n)``, exactly."""
    if not isinstance(ctx, _SPECTRUM_CONTEXTS):
        raise UnsupportedContext(f"no spectrum for {ctx.spec}")
    if n < 0:
        raise DomainError("n must be non-negative")
    return nat(ctx, n).upper


def spectrum(ctx: ArithmeticContext, n_max: int) -> list:
    """``[(n, n'), ...]`` for ``1 <= n <= n_max``."""
    return [(n, spectrum_n_prime(ctx, n)) for n in range(1, n_max + 1)]


def has_doubled_binary_digits(value, base: int) -> bool:
    """True when ``value / 2`` is an integer whose base-``base`` digits are all 0 or 1.

    This is exactly the form ``2 (b_k base^k + ... + b_0)`` of a spectrum label.
    """
    value = Fraction(value)
    if value.denominator != 1 or value % 2:
        return False
    digits = to_digits(value / 2, base)
    return all(d in (0, 1) for d in digits.integer_part)


def decimal_string(q, digits: int = 20) -> str:
    """Decimal rendering of a rational to ``digits`` significant digits."""
    q = Fraction(q)
    with decimal.localcontext() as dctx:
        dctx.prec = digits
        value = decimal.Decimal(q.numerator) / decimal.Decimal(q.denominator)
    return format(value, "g") if value else "0"

"""Property suites behind ``ndfourier selftest``.

Each suite reports the largest deviation it observed and the tolerance it
was judged against.  Deviations are measured in lowercase coordinates.
Randomness comes from a seeded generator, so a given configuration always
reports the same numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List

import mpmath
import numpy as np

from ._mp import to_dyadic, to_mpf, working_precision
from .arithmetic import ArithmeticContext, Fechner, NDNumber, nat, one_prime, zero_prime
from .calculus import (
    derivative,
    derivative_by_limit,
    harmonic,
    integral,
    integral_function,
    monomial,
)
from .errors import NDError
from .fourier import analyze, cos_basis, parseval_check, scalar_product, sin_basis
from .ndcomplex import NDComplex, cexp_i, cmul, nd_cos, nd_sin
from .quadrature import DEFAULT_QUADRATURE, QuadratureSpec


@dataclass(frozen=True)
class SuiteResult:
    name: str
    max_deviation: float
    tolerance: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name}: max deviation {self.max_deviation:.3e} (tolerance {self.tolerance:.3e})"
        return f"{text} {self.detail}" if self.detail else text


def _dev(a, b) -> float:
    """Distance between two NDNumbers or NDComplexes in lowercase coordinates."""
    if isinstance(a, NDComplex) or isinstance(b, NDComplex):
        a, b = NDComplex.of(a), NDComplex.of(b)
        return float(max(abs(a.re.lower - b.re.lower), abs(a.im.lower - b.im.lower)))
    return float(abs(a.lower - b.lower))


def _rel(value: complex, expected: complex) -> float:
    return abs(value - expected) / max(1.0, abs(expected))


def _random_rational(rng, bound=5, den=12) -> Fraction:
    d = int(rng.integers(1, den + 1))
    return Fraction(int(rng.integers(-bound * d, bound * d + 1)), d)


def arithmetic_laws(ctx: ArithmeticContext, rng, cases: int = 100) -> SuiteResult:
    zero, one = zero_prime(ctx), one_prime(ctx)
    worst = 0.0
    for _ in range(cases):
        X, Y, Z = (NDNumber(ctx, _random_rational(rng)) for _ in range(3))
        checks = [
            ((X + Y) + Z, X + (Y + Z)),
            ((X * Y) * Z, X * (Y * Z)),
            (X + Y, Y + X),
            (X * Y, Y * X),
            (X * (Y + Z), X * Y + X * Z),
            (X - X, zero),
            ((-one) * (-one), one),
        ]
        if X != zero:
            checks.append((X / X, one))
        m, n = (int(v) for v in rng.integers(0, 50, size=2))
        checks += [(nat(ctx, m) + nat(ctx, n), nat(ctx, m + n)), (nat(ctx, m) * nat(ctx, n), nat(ctx, m * n))]
        worst = max(worst, *(_dev(a, b) for a, b in checks))
    return SuiteResult("arithmetic-laws", worst, 0.0, f"({cases} cases)")


def negative_element(ctx: ArithmeticContext, rng, cases: int = 50) -> SuiteResult:
    """``(-)X (+) X = 0'``, with ``(-)X`` built in uppercase coordinates.

    For the Fechner bijection the negative comes from the closed form
    ``e^{-2b/a} / X``, so this exercises the transcendental round trip.
    """
    bits = ctx.precision_bits
    worst = 0.0
    for _ in range(cases):
        X = NDNumber(ctx, _random_rational(rng))
        if isinstance(ctx, Fechner):
            with working_precision(bits):
                N_upper = mpmath.exp(-2 * to_mpf(ctx.b) / to_mpf(ctx.a)) / to_mpf(X.upper)
            N = NDNumber.from_upper(ctx, to_dyadic(N_upper, bits))
        else:
            N = NDNumber.from_upper(ctx, (-X).upper)
        worst = max(worst, float(abs(N.lower + X.lower)))
    tol = 2.0 ** -(bits - 8) if not ctx.exact else 0.0
    return SuiteResult("negative-element", worst, tol, f"({cases} cases)")


def trig_identity(ctx: ArithmeticContext, rng, cases: int = 100) -> SuiteResult:
    one = one_prime(ctx)
    worst = 0.0
    for _ in range(cases):
        phi = NDNumber(ctx, Fraction(int(rng.integers(-2**20, 2**20)), 2**18))
        c, s = nd_cos(phi), nd_sin(phi)
        worst = max(worst, _dev(c * c + s * s, one))
        worst = max(worst, _dev(cmul(cexp_i(phi), cexp_i(-phi)), one))
    return SuiteResult("trig-identity", worst, 2.0**-100, f"({cases} angles)")


def _rule_functions(ctx, rng):
    k = NDNumber(ctx, _random_rational(rng, bound=2, den=4) or Fraction(1, 2))
    return [
        monomial(ctx, int(rng.integers(2, 6))),
        harmonic(ctx, "sin", k),
        harmonic(ctx, "cos", k),
        harmonic(ctx, "exp", k),
        harmonic(ctx, "expi", k),
    ]


def derivative_rules(ctx: ArithmeticContext, rng, points: int = 4) -> SuiteResult:
    worst = 0.0
    try:
        for _ in range(points):
            X = NDNumber(ctx, Fraction(int(rng.integers(-2**10, 2**10)), 2**9))
            for A in _rule_functions(ctx, rng):
                worst = max(worst, _dev(derivative(A, X, method="closed"), derivative_by_limit(A, X)))
    except NDError as exc:
        return SuiteResult("derivative-rules", math.inf, 2.0**-64, f"({type(exc).__name__}: {exc})")
    return SuiteResult("derivative-rules", worst, 2.0**-64, f"({points} points x 5 rules)")


def _smooth_set(ctx):
    return [monomial(ctx, 1), monomial(ctx, 2), harmonic(ctx, "sin", 1), harmonic(ctx, "exp", 1)]


def fundamental_theorems(ctx: ArithmeticContext, rng, quadrature: QuadratureSpec, points: int = 3) -> SuiteResult:
    """Both directions: ``int D A = A(X) (-) A(Y)`` and ``D int A = A``."""
    worst = 0.0
    try:
        for _ in range(points):
            X = NDNumber(ctx, _random_rational(rng, bound=2, den=8))
            Y = NDNumber(ctx, _random_rational(rng, bound=2, den=8))
            for A in _smooth_set(ctx):
                lhs = integral(A.derivative_function(), Y, X, quadrature)
                rhs = A(X) - A(Y)
                worst = max(worst, _rel(float(lhs.lower), float(rhs.lower)))
                back = derivative(integral_function(A, Y, quadrature), X, method="fd")
                worst = max(worst, _rel(float(back.lower), float(A(X).lower)))
    except NDError as exc:
        return SuiteResult("fundamental-theorems", math.inf, 1e-10, f"({type(exc).__name__}: {exc})")
    return SuiteResult("fundamental-theorems", worst, 1e-10, f"({points} intervals x 4 functions)")


def orthonormality(ctx: ArithmeticContext, quadrature: QuadratureSpec, n_max: int = 8, period=1) -> SuiteResult:
    basis = [cos_basis(n, period, ctx) for n in range(n_max + 1)]
    basis += [sin_basis(n, period, ctx) for n in range(1, n_max + 1)]
    worst = 0.0
    for i, B1 in enumerate(basis):
        for j, B2 in enumerate(basis[i:], start=i):
            value = scalar_product(B1, B2, period, quadrature).lower
            worst = max(worst, abs(value - (1.0 if i == j else 0.0)))
    return SuiteResult("orthonormality", worst, 1e-10, f"(n, m <= {n_max})")


def parseval(ctx: ArithmeticContext, rng, quadrature: QuadratureSpec, n_max: int = 6) -> SuiteResult:
    """Parseval on random trigonometric polynomials, whose series is finite."""
    period = 1
    tau = lambda: 2 * mpmath.pi  # noqa: E731

    def poly():
        terms = []
        for n in range(1, n_max + 1):
            for kind in ("sin", "cos"):
                amp = _random_rational(rng, bound=1, den=8)
                terms.append(harmonic(ctx, kind, lambda n=n: n * tau(), amp))
        total = terms[0]
        for t in terms[1:]:
            total = total + t
        return total

    A, B = poly(), poly()
    S_A, S_B = analyze(A, period, n_max, quadrature), analyze(B, period, n_max, quadrature)
    lhs, rhs = parseval_check(A, B, S_A, S_B)
    worst = _rel(lhs.lower, rhs.lower)
    return SuiteResult("parseval", worst, 1e-10, f"(trigonometric polynomials, n <= {n_max})")


def _random_function(ctx, rng):
    kind = ["sin", "cos", "exp", "expi", "mono"][int(rng.integers(0, 5))]
    if kind == "mono":
        return monomial(ctx, int(rng.integers(0, 4)), _random_rational(rng, bound=2, den=4))
    k = _random_rational(rng, bound=3, den=4)
    return harmonic(ctx, kind, k, _random_rational(rng, bound=2, den=4))


def scalar_product_laws(ctx: ArithmeticContext, rng, quadrature: QuadratureSpec, pairs: int = 20) -> SuiteResult:
    """Conjugate symmetry, additivity and homogeneity of ``<A|B>``."""
    period = 1
    worst = 0.0
    for _ in range(pairs):
        A, B, C = (_random_function(ctx, rng) for _ in range(3))
        AB = scalar_product(A, B, period, quadrature).lower
        BA = scalar_product(B, A, period, quadrature).lower
        worst = max(worst, _rel(AB.conjugate(), BA))
        AC = scalar_product(A, C, period, quadrature).lower
        worst = max(worst, _rel(scalar_product(A, B + C, period, quadrature).lower, AB + AC))
        lam = NDComplex.from_lower(ctx, _random_rational(rng), _random_rational(rng))
        scaled = scalar_product(A, B.scaled(lam), period, quadrature).lower
        worst = max(worst, _rel(scaled, lam.lower * AB))
    return SuiteResult("scalar-product-laws", worst, 1e-10, f"({pairs} triples)")


def run_selftest(
    ctx: ArithmeticContext,
    quadrature: QuadratureSpec = DEFAULT_QUADRATURE,
    seed: int = 0,
    progress: Callable[[SuiteResult], None] = None,
) -> List[SuiteResult]:
    """Run every suite in ``ctx``; ``progress`` sees each result as it lands."""
    rng = np.random.default_rng(seed)
    suites = [
        lambda: arithmetic_laws(ctx, rng),
        lambda: negative_element(ctx, rng),
        lambda: trig_identity(ctx, rng),
        lambda: derivative_rules(ctx, rng),
        lambda: fundamental_theorems(ctx, rng, quadrature),
        lambda: orthonormality(ctx, quadrature),
        lambda: parseval(ctx, rng, quadrature),
        lambda: scalar_product_laws(ctx, rng, quadrature),
    ]
    results = []
    for suite in suites:
        result = suite()
        results.append(result)
        if progress is not None:
            progress(result)
    return results

"""Derivatives, integrals and the Laplacian of conjugated functions ``A = f^-1 o a o f``.

An :class:`NDFunction` is represented by its lowercase function ``a``;
evaluating it at ``X`` returns the element with lowercase coordinate
``a(f(X))``.  Consequently

    DA/DX (X)       = f^-1( a'(f(X)) )
    int_X^Y A dX'   = f^-1( int_{f(X)}^{f(Y)} a(x) dx )

Functions built by the constructors here (powers, Sin, Cos, Exp, ...) carry
closed-form derivatives; arbitrary callables fall back to finite
differences with Richardson extrapolation.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Optional, Sequence

import mpmath
import numpy as np

from ._mp import to_dyadic, to_mpf, working_precision
from .arithmetic import ArithmeticContext, NDNumber
from .errors import ContextMismatch, NonConvergent, NonDifferentiable
from .ndcomplex import NDComplex
from .quadrature import DEFAULT_QUADRATURE, QuadratureSpec, integrate


def _no_breaks(lo, hi):
    return ()


@dataclass(frozen=True, eq=False)
class NDFunction:
    """A function ``X -> X`` (or ``X -> complex``) given by its lowercase form.

    Parameters
    ----------
    context : ArithmeticContext
    lower_fn : callable
        ``a`` on mpmath numbers; evaluated at the working precision of the
        context.  Returns an mpf, or an mpc when ``is_complex``.
    vec : callable, optional
        numpy-vectorized ``a`` for quadrature.  Derived from ``lower_fn``
        when omitted (slow).
    closed_derivative : callable, optional
        Zero-argument factory for the NDFunction of ``a'``.
    breakpoints : callable, optional
        ``(lo, hi) -> points`` where ``a`` jumps; quadrature splits there.
    lower_bits : int, optional
        Accuracy of ``lower_fn`` when it is below the context precision
        (e.g. when it wraps a double-precision quadrature).
    exact_fn : callable, optional
        ``a`` on Fractions, returning a Fraction.  When present, evaluation
        at an element is exact instead of rounded to ``precision_bits``.
    """

    context: ArithmeticContext
    lower_fn: Callable
    vec: Optional[Callable] = None
    description: str = ""
    closed_derivative: Optional[Callable[[], "NDFunction"]] = None
    breakpoints: Callable[[float, float], Sequence[float]] = field(default=_no_breaks)
    is_complex: bool = False
    lower_bits: Optional[int] = None
    exact_fn: Optional[Callable[[Fraction], Fraction]] = None

    def lower_at(self, x):
        """``a(x)`` at the working precision of the context."""
        with working_precision(self.context.precision_bits):
            return self.lower_fn(to_mpf(x))

    def lower_vec(self, xs):
        if self.vec is not None:
            return self.vec(np.asarray(xs, dtype=float))
        conv = complex if self.is_complex else float
        with mpmath.workprec(64):
            return np.array([conv(self.lower_fn(mpmath.mpf(float(t)))) for t in np.ravel(xs)])

    def __call__(self, X: NDNumber):
        if X.context != self.context:
            raise ContextMismatch(f"{X.context} vs {self.context}")
        if self.exact_fn is not None:
            return NDNumber(self.context, self.exact_fn(X.lower))
        return self._wrap(self.lower_at(X.lower))

    def _wrap(self, value):
        bits = self.context.precision_bits
        if self.lower_bits is not None:
            bits = min(bits, self.lower_bits)
        if self.is_complex:
            # mpc() would re-round at the global precision
            re, im = (value.real, value.imag) if isinstance(value, mpmath.mpc) else (value, 0)
            return NDComplex(
                NDNumber(self.context, to_dyadic(re, bits)),
                NDNumber(self.context, to_dyadic(im, bits)),
            )
        return NDNumber(self.context, to_dyadic(value, bits))

    def derivative_function(self) -> Optional["NDFunction"]:
        return self.closed_derivative() if self.closed_derivative else None

    def __add__(self, other: "NDFunction") -> "NDFunction":
        """Pointwise (+): the lowercase functions add."""
        if other.context != self.context:
            raise ContextMismatch(f"{self.context} vs {other.context}")
        f, g = self, other
        vec = None
        if f.vec is not None and g.vec is not None:
            vec = lambda xs: f.vec(xs) + g.vec(xs)  # noqa: E731
        deriv = None
        if f.closed_derivative and g.closed_derivative:
            deriv = lambda: f.derivative_function() + g.derivative_function()  # noqa: E731
        bits = [b for b in (f.lower_bits, g.lower_bits) if b is not None]
        return NDFunction(
            self.context,
            lambda x: f.lower_fn(x) + g.lower_fn(x),
            vec=vec,
            description=f"({f.description}) (+) ({g.description})",
            closed_derivative=deriv,
            breakpoints=lambda lo, hi: (*f.breakpoints(lo, hi), *g.breakpoints(lo, hi)),
            is_complex=f.is_complex or g.is_complex,
            lower_bits=min(bits) if bits else None,
            exact_fn=(lambda x: f.exact_fn(x) + g.exact_fn(x)) if f.exact_fn and g.exact_fn else None,
        )

    def scaled(self, factor) -> "NDFunction":
        """Pointwise ``Lambda (*) A`` for a constant NDNumber or NDComplex ``Lambda``."""
        lam = NDComplex.of(factor)
        if lam.context != self.context:
            raise ContextMismatch(f"{lam.context} vs {self.context}")
        re, im = lam.re.lower, lam.im.lower
        is_complex = self.is_complex or im != 0

        def mp_factor():
            return mpmath.mpc(to_mpf(re), to_mpf(im)) if is_complex else to_mpf(re)

        num = complex(float(re), float(im)) if is_complex else float(re)
        f = self
        vec = (lambda xs: num * f.vec(xs)) if f.vec is not None else None
        deriv = (lambda: f.derivative_function().scaled(factor)) if f.closed_derivative else None
        return replace(
            self,
            lower_fn=lambda x: mp_factor() * f.lower_fn(x),
            vec=vec,
            description=f"Lambda (*) {f.description}",
            closed_derivative=deriv,
            is_complex=is_complex,
            exact_fn=(lambda x: re * f.exact_fn(x)) if f.exact_fn and not is_complex else None,
        )


def from_lower(ctx: ArithmeticContext, fn, vec=None, derivative=None, description="", **kwargs):
    """Wrap an arbitrary lowercase function; ``derivative`` is an optional lowercase ``a'``."""
    closed = None
    if derivative is not None:
        closed = lambda: from_lower(ctx, derivative, description=f"d/dx {description}")  # noqa: E731
    return NDFunction(ctx, fn, vec=vec, description=description, closed_derivative=closed, **kwargs)


def _thunk(value):
    if callable(value):
        return value
    if isinstance(value, NDNumber):
        value = value.lower
    q = Fraction(value)
    return lambda: to_mpf(q)


def _rational(value) -> Optional[Fraction]:
    if isinstance(value, NDNumber):
        return value.lower
    if callable(value):
        return None
    return Fraction(value)


def constant(ctx: ArithmeticContext, value) -> NDFunction:
    """``A(X) = C`` for an NDNumber ``C`` (or a lowercase rational)."""
    c, q = _thunk(value), _rational(value)
    return NDFunction(
        ctx,
        lambda x: c(),
        vec=lambda xs: np.full(np.shape(xs), float(c())),
        description="constant",
        closed_derivative=lambda: constant(ctx, 0),
        exact_fn=(lambda x: q) if q is not None else None,
    )


def monomial(ctx: ArithmeticContext, power: int, coeff=1) -> NDFunction:
    """``A(X) = C (*) X^{N'}``; ``monomial(ctx, N)`` is the power function ``X^{N'}``."""
    if power < 0:
        raise ValueError("power must be non-negative")
    c, q = _thunk(coeff), _rational(coeff)
    if power == 0:
        return constant(ctx, coeff)

    def deriv():
        return monomial(ctx, power - 1, q * power if q is not None else lambda: c() * power)

    return NDFunction(
        ctx,
        lambda x: c() * x**power,
        vec=lambda xs: float(c()) * np.asarray(xs, dtype=float) ** power,
        description=f"X^{power}'",
        closed_derivative=deriv,
        exact_fn=(lambda x: q * x**power) if q is not None else None,
    )


_HARMONIC = {
    "sin": (mpmath.sin, np.sin),
    "cos": (mpmath.cos, np.cos),
    "exp": (mpmath.exp, np.exp),
}


def harmonic(ctx: ArithmeticContext, kind: str, k, amplitude=1) -> NDFunction:
    """``amplitude * h(k x)`` in lowercase coordinates, ``h`` one of sin, cos, exp, expi.

    ``k`` and ``amplitude`` may be NDNumbers, rationals, or zero-argument
    callables returning mpmath values (for irrational constants such as
    ``2 pi / T``).  ``expi`` is ``exp(i k x)`` and yields a complex function.
    """
    kt, at = _thunk(k), _thunk(amplitude)
    is_complex = kind == "expi" or isinstance(at(), mpmath.mpc)
    if kind == "expi":
        mp_fn = lambda x: at() * mpmath.expj(kt() * x)  # noqa: E731
        vec = lambda xs: complex(at()) * np.exp(1j * float(kt()) * np.asarray(xs, dtype=float))  # noqa: E731
        deriv_amp = lambda: at() * kt() * mpmath.mpc(0, 1)  # noqa: E731
        deriv_kind = "expi"
    else:
        mp_h, np_h = _HARMONIC[kind]
        mp_fn = lambda x: at() * mp_h(kt() * x)  # noqa: E731
        conv = complex if is_complex else float
        vec = lambda xs: conv(at()) * np_h(float(kt()) * np.asarray(xs, dtype=float))  # noqa: E731
        deriv_kind = {"sin": "cos", "cos": "sin", "exp": "exp"}[kind]
        sign = -1 if kind == "cos" else 1
        deriv_amp = lambda: sign * at() * kt()  # noqa: E731
    return NDFunction(
        ctx,
        mp_fn,
        vec=vec,
        description=f"{kind}(kX)",
        closed_derivative=lambda: harmonic(ctx, deriv_kind, kt, deriv_amp),
        is_complex=is_complex,
    )


def sin_of(K: NDNumber) -> NDFunction:
    """``X -> Sin(K (*) X)``."""
    return harmonic(K.context, "sin", K)


def cos_of(K: NDNumber) -> NDFunction:
    return harmonic(K.context, "cos", K)


def exp_of(K: NDNumber) -> NDFunction:
    return harmonic(K.context, "exp", K)


def exp_i_of(K: NDNumber) -> NDFunction:
    """``X -> Exp(i' K (*) X)``, complex valued."""
    return harmonic(K.context, "expi", K)


def _richardson(estimates, ratio):
    """Extrapolate estimates taken at step ratio 2 whose error expands in powers
    of ``h**p`` with ``2**p == ratio``.

    Returns the table entry with the smallest local error estimate, and that
    estimate; rounding noise at tiny steps simply never wins.  Entries must
    also lie within the spread of the two finest raw estimates: large steps
    that are whole multiples of a period agree with each other exactly, and
    without this check that spurious agreement would look error-free.
    """
    table, candidates = [], []
    for k, est in enumerate(estimates):
        row = [est]
        for j in range(1, k + 1):
            row.append(row[j - 1] + (row[j - 1] - table[k - 1][j - 1]) / (ratio**j - 1))
            err = max(abs(row[j] - row[j - 1]), abs(row[j] - table[k - 1][j - 1]))
            candidates.append((row[j], err))
        table.append(row)
    if not candidates:
        return estimates[0], abs(estimates[0])
    anchor, spread = estimates[-1], 2 * abs(estimates[-1] - estimates[-2])
    consistent = [c for c in candidates if abs(c[0] - anchor) <= spread + c[1]]
    return min(consistent or candidates, key=lambda c: c[1])


def _tolerance(A: NDFunction):
    bits = A.context.precision_bits
    if A.lower_bits is not None:
        bits = min(bits, A.lower_bits)
    return Fraction(1, 2 ** (bits // 2))


def _check(value, err, tol, what):
    if isinstance(err, mpmath.mpf):
        tol = to_mpf(tol)
    scale = max(1, abs(value))
    if err > tol * scale:
        raise NonConvergent(f"{what}: extrapolation error {float(err):.3g} above tolerance {float(tol):.3g}")


def _fd_lower(A: NDFunction, x: Fraction, order: int, steps: int):
    """Central differences of order 1 or 2 at ``x``, Richardson-extrapolated, in mp.

    For functions only accurate to ``lower_bits`` the smallest step is kept
    large enough that rounding noise (about ``2^-lower_bits / h^order``)
    stays below the truncation error of the extrapolated table.
    """
    if A.lower_bits is not None:
        steps = min(steps, max(4, A.lower_bits // (6 if order == 1 else 10)))
    with working_precision(A.context.precision_bits):
        fx = A.lower_fn(to_mpf(x)) if order == 2 else None
        results = []
        for part in ("real", "imag") if A.is_complex else ("real",):
            ests = []
            for k in range(1, steps + 1):
                h = Fraction(1, 2**k)
                up = A.lower_fn(to_mpf(x + h))
                dn = A.lower_fn(to_mpf(x - h))
                if order == 1:
                    d = (up - dn) / (2 * to_mpf(h))
                else:
                    d = (up - 2 * fx + dn) / to_mpf(h) ** 2
                ests.append(getattr(mpmath.mpc(d), part))
            results.append(_richardson(ests, 4))
    return results


def _fd(A: NDFunction, X: NDNumber, order: int, steps: int):
    results = _fd_lower(A, X.lower, order, steps)
    tol = _tolerance(A)
    for value, err in results:
        _check(value, err, tol, f"order-{order} finite difference of {A.description}")
    if A.is_complex:
        bits = A.context.precision_bits
        with working_precision(bits):
            value = mpmath.mpc(results[0][0], results[1][0])
        return A._wrap(value)
    return A._wrap(results[0][0])


def derivative(A: NDFunction, X: NDNumber, method: str = "auto", steps: int = 24):
    """``DA/DX`` at ``X`` via the lowercase derivative.

    ``method="auto"`` uses the closed form when the function carries one and
    central finite differences otherwise; ``"fd"`` forces differences.

    Raises
    ------
    NonDifferentiable
        If the extrapolated difference quotients do not settle.
    """
    if X.context != A.context:
        raise ContextMismatch(f"{X.context} vs {A.context}")
    if method not in ("auto", "closed", "fd"):
        raise ValueError(f"unknown method {method!r}")
    if method != "fd" and A.closed_derivative is not None:
        return A.derivative_function()(X)
    if method == "closed":
        raise NonDifferentiable(f"{A.description} has no closed-form derivative")
    return _fd(A, X, 1, steps)


def derivative_by_limit(A: NDFunction, X: NDNumber, steps: int = 40):
    """The limit ``(A(X (+) H) (-) A(X)) (/) H`` along ``f(H_k) = 2^-k``.

    Each quotient is formed with the non-Diophantine operations; the
    sequence is Richardson-extrapolated in lowercase coordinates.

    Raises
    ------
    NonConvergent
        If the extrapolated quotients fail the Cauchy check at
        ``2^-(precision_bits/2)``.
    """
    ctx = X.context
    AX = A(X)
    quotients = []
    for k in range(1, steps + 1):
        H = NDNumber(ctx, Fraction(1, 2**k))
        diff = A(X + H) - AX
        if isinstance(diff, NDComplex):
            quotients.append((diff.re / H, diff.im / H))
        else:
            quotients.append((diff / H,))
    tol = _tolerance(A)
    parts = []
    for i in range(len(quotients[0])):
        value, err = _richardson([q[i].lower for q in quotients], 2)
        _check(value, err, tol, f"difference quotient of {A.description}")
        parts.append(NDNumber(ctx, to_dyadic(value, ctx.precision_bits)))
    if len(parts) == 2:
        return NDComplex(*parts)
    return parts[0]


def _endpoint(X: NDNumber) -> float:
    return float(X.lower)


def integral(A: NDFunction, X: NDNumber, Y: NDNumber, quadrature: QuadratureSpec = DEFAULT_QUADRATURE):
    """``int_X^Y A(X') DX' = f^-1( int_{f(X)}^{f(Y)} a(x) dx )`` by Gauss-Legendre."""
    if X.context != A.context or Y.context != A.context:
        raise ContextMismatch("integration limits must share the function's context")
    lo, hi = _endpoint(X), _endpoint(Y)
    a, b = min(lo, hi), max(lo, hi)
    value = integrate(A.lower_vec, lo, hi, quadrature, A.breakpoints(a, b))
    return _wrap_float(A.context, value, A.is_complex)


def _wrap_float(ctx, value, is_complex):
    bits = min(ctx.precision_bits, 53)
    if is_complex:
        value = complex(value)
        return NDComplex(
            NDNumber(ctx, to_dyadic(value.real, bits)), NDNumber(ctx, to_dyadic(value.imag, bits))
        )
    return NDNumber(ctx, to_dyadic(float(np.real(value)), bits))


def integral_function(A: NDFunction, Y: NDNumber, quadrature: QuadratureSpec = DEFAULT_QUADRATURE) -> NDFunction:
    """``X -> int_Y^X A(X') DX'`` as an NDFunction (double-precision accurate)."""
    y0 = _endpoint(Y)

    def lower(x):
        xf = float(x)
        a, b = min(xf, y0), max(xf, y0)
        v = integrate(A.lower_vec, y0, xf, quadrature, A.breakpoints(a, b))
        return mpmath.mpc(v) if A.is_complex else mpmath.mpf(float(np.real(v)))

    return NDFunction(
        A.context,
        lower,
        description=f"int {A.description}",
        is_complex=A.is_complex,
        lower_bits=50,
    )


def laplacian(A: NDFunction, X: NDNumber, method: str = "auto", steps: int = 20):
    """``Delta A = D/DX D/DX A`` at ``X``.

    ``method="fd"`` uses second central differences of the lowercase
    function instead of the closed-form chain.
    """
    if method not in ("auto", "closed", "fd"):
        raise ValueError(f"unknown method {method!r}")
    if method != "fd" and A.closed_derivative is not None:
        first = A.derivative_function()
        if first.closed_derivative is not None:
            return first.derivative_function()(X)
    if method == "closed":
        raise NonDifferentiable(f"{A.description} has no closed-form second derivative")
    return _fd(A, X, 2, steps)

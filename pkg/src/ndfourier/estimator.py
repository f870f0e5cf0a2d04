"""scikit-learn style wrappers around the Fourier machinery.

The library proper works on exact elements; these estimators trade
exactness for the familiar ``fit``/``transform``/``predict`` shape so the
basis can be dropped into numpy pipelines.  Samples are float arrays in
either lowercase or uppercase coordinates (``coordinates=``).

Uppercase floats are converted exactly, so for the Cantor-set bijections
only elements with an exact binary float (such as 1/4 = 0.(02)_3) are
accepted; the others raise :class:`~ndfourier.errors.NotInCantorSet`.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from .arithmetic import parse_context
from .fourier import FourierSeries, analyze, reconstruct_lower
from .quadrature import QuadratureSpec

_COORDINATES = ("lower", "upper")


def _check_common(est):
    if est.coordinates not in _COORDINATES:
        raise ValueError(f"coordinates must be one of {_COORDINATES}, got {est.coordinates!r}")
    if int(est.n_terms) < 0:
        raise ValueError("n_terms must be non-negative")
    period = Fraction(str(est.period))
    if period <= 0:
        raise ValueError("period must be positive")
    return parse_context(est.bijection, int(est.precision_bits)), period


def _to_lower(ctx, values, coordinates):
    if coordinates == "lower":
        return np.asarray(values, dtype=float)
    return np.array([float(ctx.forward(Fraction(float(v)))) for v in np.ravel(values)])


def _to_coordinates(ctx, values, coordinates):
    if coordinates == "lower":
        return values
    return np.array([float(ctx.inverse(Fraction(float(v)))) for v in values])


def basis_matrix(xs, period, n_terms: int) -> np.ndarray:
    """Columns ``c_0, c_1..c_N, s_1..s_N`` at lowercase points ``xs``."""
    xs = np.asarray(xs, dtype=float)
    T = float(period)
    cols = [np.full(xs.shape, 1 / np.sqrt(T))]
    amp = np.sqrt(2 / T)
    args = [2 * n * np.pi * xs / T for n in range(1, n_terms + 1)]
    cols += [amp * np.cos(a) for a in args]
    cols += [amp * np.sin(a) for a in args]
    return np.column_stack(cols)


class NDFourierFeatures(TransformerMixin, BaseEstimator):
    """Evaluate the orthonormal basis ``C_n``, ``S_n`` (lowercase values) at samples.

    Parameters
    ----------
    bijection : str
        Context specification, e.g. ``"ternary-line:minus"``.
    period : str or number
        Lowercase period ``f(T)``; strings such as ``"1/3"`` are read exactly.
    n_terms : int
        Highest harmonic; the output has ``2 * n_terms + 1`` columns.
    precision_bits : int
    coordinates : {"lower", "upper"}
        Coordinate system of the input samples.
    """

    def __init__(self, bijection="ternary-line:minus", period="1", n_terms=5, precision_bits=128, coordinates="lower"):
        self.bijection = bijection
        self.period = period
        self.n_terms = n_terms
        self.precision_bits = precision_bits
        self.coordinates = coordinates

    def fit(self, X, y=None):
        X = check_array(X)
        if X.shape[1] != 1:
            raise ValueError("expected a single feature column")
        self.context_, self.period_ = _check_common(self)
        self.n_features_in_ = 1
        return self

    def transform(self, X):
        check_is_fitted(self, "context_")
        X = check_array(X)
        if X.shape[1] != 1:
            raise ValueError("expected a single feature column")
        xs = _to_lower(self.context_, X[:, 0], self.coordinates)
        return basis_matrix(xs, self.period_, int(self.n_terms))


class NDFourierSeries(RegressorMixin, BaseEstimator):
    """Truncated Fourier series as a regressor.

    ``fit(X, y)`` solves the least-squares problem on the basis matrix;
    :meth:`fit_function` instead takes an :class:`~ndfourier.calculus.NDFunction`
    and computes the coefficients by quadrature.  Both leave a
    :class:`~ndfourier.fourier.FourierSeries` in ``series_``.
    """

    def __init__(
        self,
        bijection="ternary-line:minus",
        period="1",
        n_terms=5,
        nodes=32,
        panels=4,
        tol=1e-12,
        precision_bits=128,
        coordinates="lower",
    ):
        self.bijection = bijection
        self.period = period
        self.n_terms = n_terms
        self.nodes = nodes
        self.panels = panels
        self.tol = tol
        self.precision_bits = precision_bits
        self.coordinates = coordinates

    def _quadrature(self):
        return QuadratureSpec(nodes=int(self.nodes), panels=int(self.panels), tol=float(self.tol))

    def fit(self, X, y):
        X, y = check_X_y(X, y)
        if X.shape[1] != 1:
            raise ValueError("expected a single feature column")
        ctx, period = _check_common(self)
        xs = _to_lower(ctx, X[:, 0], self.coordinates)
        ys = _to_lower(ctx, y, self.coordinates)
        coef, *_ = np.linalg.lstsq(basis_matrix(xs, period, int(self.n_terms)), ys, rcond=None)
        N = int(self.n_terms)
        wrap = [ctx.number(Fraction(float(c))) for c in coef]
        series = FourierSeries(ctx, period, wrap[: N + 1], wrap[N + 1 :], signal="samples", quadrature=self._quadrature())
        return self._finish(series)

    def fit_function(self, A):
        ctx, period = _check_common(self)
        if A.context != ctx:
            raise ValueError(f"function lives in {A.context}, estimator in {ctx}")
        return self._finish(analyze(A, period, int(self.n_terms), self._quadrature()))

    def _finish(self, series: FourierSeries):
        self.series_ = series
        self.context_ = series.context
        self.coef_ = np.array(
            [float(c.lower) for c in series.cos_coeffs] + [float(s.lower) for s in series.sin_coeffs]
        )
        self.n_features_in_ = 1
        return self

    def predict(self, X):
        check_is_fitted(self, "series_")
        X = check_array(X)
        if X.shape[1] != 1:
            raise ValueError("expected a single feature column")
        xs = _to_lower(self.context_, X[:, 0], self.coordinates)
        values = reconstruct_lower(self.series_, xs, self.series_.n_max)
        return _to_coordinates(self.context_, values, self.coordinates)

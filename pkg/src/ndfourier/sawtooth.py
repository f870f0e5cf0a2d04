"""The Cantorian sawtooth: a(x) = x on [-T/2, T/2), extended periodically.

Figure datasets sample uniformly in lowercase coordinates and map the
samples through ``f^-1``; nothing here renders images.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence

import mpmath
import numpy as np

from ._mp import to_mpf
from .arithmetic import ArithmeticContext, NDNumber, QuaternaryCantor, TernaryLine
from .calculus import NDFunction
from .exact_digits import Branch
from .fourier import FourierSeries, analyze, reconstruct, reconstruct_lower
from .quadrature import DEFAULT_QUADRATURE, QuadratureSpec


@dataclass(frozen=True)
class SawtoothSpec:
    """Unit-slope sawtooth of lowercase period ``period_lower``; jumps by ``period_lower``."""

    period_lower: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "period_lower", Fraction(self.period_lower))
        if self.period_lower <= 0:
            raise ValueError("period must be positive")

    def lower(self, x):
        """Exact value at a rational ``x``."""
        T = self.period_lower
        x = Fraction(x)
        return x - T * math.floor(x / T + Fraction(1, 2))

    def jumps(self, lo: float, hi: float) -> List[float]:
        """Jump locations (odd multiples of T/2) strictly inside ``(lo, hi)``."""
        T = float(self.period_lower)
        first = math.ceil(lo / T - 0.5)
        out = []
        k = first
        while (k + 0.5) * T < hi:
            p = (k + 0.5) * T
            if p > lo:
                out.append(p)
            k += 1
        return out


def sawtooth_nd(ctx: ArithmeticContext, spec: SawtoothSpec = SawtoothSpec()) -> NDFunction:
    """``A = f^-1 o a o f`` with jump breakpoints registered for quadrature."""
    T = spec.period_lower

    def mp_fn(x):
        t = to_mpf(T)
        return x - t * mpmath.floor(x / t + mpmath.mpf(1) / 2)

    def vec(xs):
        t = float(T)
        return xs - t * np.floor(xs / t + 0.5)

    return NDFunction(ctx, mp_fn, vec=vec, description="sawtooth", breakpoints=spec.jumps, exact_fn=spec.lower)


def sawtooth_series(
    ctx: ArithmeticContext,
    n_max: int,
    spec: SawtoothSpec = SawtoothSpec(),
    quadrature: QuadratureSpec = DEFAULT_QUADRATURE,
) -> FourierSeries:
    return analyze(sawtooth_nd(ctx, spec), spec.period_lower, n_max, quadrature, signal="sawtooth")


def sine_coefficient_closed_form(n: int, period=1) -> float:
    """``<s_n|a> = sqrt(2/T) (-1)^(n+1) T^2 / (2 n pi)``, i.e. ``sqrt(2)(-1)^(n+1)/(2 n pi)`` for T = 1."""
    T = float(period)
    return math.sqrt(2 / T) * (-1) ** (n + 1) * T**2 / (2 * n * math.pi)


def gibbs_overshoot(series: FourierSeries, terms: int, samples: int = 200001, measure: str = "excess") -> float:
    """Gibbs overshoot at the jump ``x = T/2`` as a fraction of the jump size.

    Dense lowercase sampling of the ``terms``-term partial sum on
    ``(0, T/2)``.  ``measure="excess"`` is the largest excess of the partial
    sum over the sawtooth itself (tends to 0.0895 and is already 0.0895 at
    30 terms); ``measure="peak"`` is the height of the largest value above
    the one-sided limit ``T/2``, smaller by about the slope times the
    distance from the peak to the jump.
    """
    T = float(series.period_lower)
    xs = np.linspace(0.0, T / 2, samples, endpoint=False)[1:]
    partial = reconstruct_lower(series, xs, terms)
    if measure == "excess":
        return float(np.max(partial - xs)) / T
    if measure == "peak":
        return (float(np.max(partial)) - T / 2) / T
    raise ValueError(f"unknown measure {measure!r}")


class FigurePoint(NamedTuple):
    x: Fraction
    y: Fraction
    coordinate_system: str


FIGURES = ("fig1-upper", "fig1-lower", "fig2-upper", "fig2-lower", "fig3")


def lower_samples(samples: int, lower_range=(-1, 1)) -> List[Fraction]:
    if samples < 2:
        raise ValueError("need at least two samples")
    lo, hi = (Fraction(v) for v in lower_range)
    step = (hi - lo) / (samples - 1)
    return [lo + i * step for i in range(samples)]


def figure_data(
    kind: str,
    samples: int,
    *,
    ctx: Optional[ArithmeticContext] = None,
    series: Optional[FourierSeries] = None,
    terms: Optional[int] = None,
    lower_range: Sequence = (-1, 1),
    period_lower=None,
) -> List[FigurePoint]:
    """Sampled curves behind the figures.

    ``fig1-upper``: ``g = f^-1`` of the ternary Cantor line.
    ``fig1-lower``: ``g_+`` of the quaternary Cantor set.
    ``fig2-upper``: the lowercase sawtooth ``a``.
    ``fig2-lower``: the Cantorian sawtooth ``A`` in uppercase coordinates.
    ``fig3``: the ``terms``-term reconstruction, lower and upper rows.

    The sawtooth period is ``period_lower``, else the series' period, else 1.
    """
    if kind not in FIGURES:
        raise ValueError(f"unknown figure {kind!r}; choose from {', '.join(FIGURES)}")
    xs = lower_samples(samples, lower_range)
    if kind == "fig1-upper":
        g = (ctx or TernaryLine()).inverse
        return [FigurePoint(x, g(x), "upper") for x in xs]
    if kind == "fig1-lower":
        g = (ctx or QuaternaryCantor(Branch.PLUS)).inverse
        return [FigurePoint(x, g(x), "upper") for x in xs]

    ctx = ctx or (series.context if series is not None else TernaryLine())
    if period_lower is None:
        period_lower = series.period_lower if series is not None else 1
    spec = SawtoothSpec(period_lower)
    if kind == "fig2-upper":
        return [FigurePoint(x, spec.lower(x), "lower") for x in xs]
    if kind == "fig2-lower":
        return [FigurePoint(ctx.inverse(x), ctx.inverse(spec.lower(x)), "upper") for x in xs]

    if series is None or terms is None:
        raise ValueError("fig3 needs a precomputed series and a term count")
    if series.context != ctx:
        raise ValueError("series context differs from the requested context")
    lower_rows, upper_rows = [], []
    for x in xs:
        X = NDNumber(ctx, x)
        Y = reconstruct(series, X, terms)
        lower_rows.append(FigurePoint(x, Y.lower, "lower"))
        upper_rows.append(FigurePoint(X.upper, Y.upper, "upper"))
    return lower_rows + upper_rows

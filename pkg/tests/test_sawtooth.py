import math
from fractions import Fraction

import numpy as np
import pytest

import oracles
from ndfourier.arithmetic import NDNumber, TernaryLine
from ndfourier.exact_digits import Branch
from ndfourier.fourier import reconstruct, reconstruct_lower
from ndfourier.sawtooth import (
    FIGURES,
    SawtoothSpec,
    figure_data,
    gibbs_overshoot,
    lower_samples,
    sawtooth_nd,
    sawtooth_series,
    sine_coefficient_closed_form,
)

F = Fraction
CTX = TernaryLine(Branch.MINUS)


@pytest.fixture(scope="module")
def series30():
    return sawtooth_series(CTX, 30)


def test_lower_values():
    spec = SawtoothSpec()
    assert spec.lower(0) == 0
    assert spec.lower(F(1, 4)) == F(1, 4)
    assert spec.lower(F(1, 2)) == F(-1, 2)
    assert spec.lower(F(-7, 4)) == F(1, 4)
    assert spec.jumps(-1, 1) == [-0.5, 0.5]


def test_cantorian_value_at_quarter():
    A = sawtooth_nd(CTX)
    Y = A(NDNumber(CTX, F(1, 4)))
    # 1/4 = 0.01_2 terminates; the MINUS branch doubles 0.00(1)_2 to 0.00(2)_3
    assert Y.lower == F(1, 4)
    assert Y.upper == oracles.ternary_line_g(F(1, 4)) == F(1, 9)


def test_coefficients(series30):
    for n in range(31):
        assert abs(float(series30.cos_coeff(n).lower)) < 1e-10
    for n in range(1, 31):
        assert float(series30.sin_coeff(n).lower) == pytest.approx(oracles.sawtooth_sine(n), abs=1e-10)
        assert sine_coefficient_closed_form(n) == pytest.approx(oracles.sawtooth_sine(n), rel=1e-15)


def test_other_period():
    T = F(1, 2)
    S = sawtooth_series(CTX, 5, SawtoothSpec(T))
    for n in range(1, 6):
        assert float(S.sin_coeff(n).lower) == pytest.approx(sine_coefficient_closed_form(n, T), abs=1e-12)


def test_partial_sum_matches_classical(series30):
    xs = np.linspace(-0.49, 0.49, 41)
    got = reconstruct_lower(series30, xs, 30)
    want = [oracles.sawtooth_partial(x, 30) for x in xs]
    assert np.max(np.abs(got - want)) < 1e-12


def test_gibbs(series30):
    assert gibbs_overshoot(series30, 30) == pytest.approx(0.0895, abs=0.002)
    assert gibbs_overshoot(series30, 30, measure="peak") == pytest.approx(0.0733, abs=0.002)
    with pytest.raises(ValueError):
        gibbs_overshoot(series30, 30, measure="area")


def test_error_away_from_jumps_decreases(series30):
    xs = np.linspace(-0.4, 0.4, 801)
    errs = [np.max(np.abs(reconstruct_lower(series30, xs, k) - xs)) for k in (5, 10, 20, 30)]
    assert all(a > b for a, b in zip(errs, errs[1:]))


def test_fig3_odd_symmetry(series30):
    X = NDNumber(CTX, 0)
    assert abs(float(reconstruct(series30, X, 5).lower)) < 1e-10
    rows = figure_data("fig3", 11, series=series30, terms=5)
    lower = [r for r in rows if r.coordinate_system == "lower"]
    for a, b in zip(lower, reversed(lower)):
        assert abs(float(a.y + b.y)) < 1e-10


def test_fig3_upper_is_image_of_lower(series30):
    rows = figure_data("fig3", 21, series=series30, terms=30)
    lower, upper = rows[:21], rows[21:]
    assert all(u.coordinate_system == "upper" for u in upper)
    for lo, up in zip(lower, upper):
        assert up.x == CTX.inverse(lo.x)
        assert up.y == CTX.inverse(lo.y)


def test_fig2_monotone_within_a_period():
    for kind in ("fig2-upper", "fig2-lower"):
        rows = figure_data(kind, 101, lower_range=(F(-1, 2), F(1, 2) - F(1, 1000)))
        ys = [r.y for r in rows]
        assert ys == sorted(ys)


def test_fig1_datasets():
    up = figure_data("fig1-upper", 9)
    assert [r.y for r in up] == [oracles.ternary_line_g(r.x) for r in up]
    lo = figure_data("fig1-lower", 9)
    assert [r.y for r in lo] == [oracles.scaled_g(r.x, 4, minus=False) for r in lo]


def test_figure_errors(series30):
    with pytest.raises(ValueError):
        figure_data("fig4", 5)
    with pytest.raises(ValueError):
        figure_data("fig3", 5)
    with pytest.raises(ValueError):
        lower_samples(1)
    assert set(FIGURES) >= {"fig1-upper", "fig3"}

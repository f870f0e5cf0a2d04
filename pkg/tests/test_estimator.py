import math
from fractions import Fraction

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.linear_model import LinearRegression
from sklearn.pipeline import make_pipeline

import oracles
from ndfourier.arithmetic import Benioff, TernaryLine
from ndfourier.errors import NotInCantorSet
from ndfourier.estimator import NDFourierFeatures, NDFourierSeries, basis_matrix
from ndfourier.sawtooth import sawtooth_nd


def test_params_and_clone():
    est = NDFourierSeries(n_terms=7, bijection="quaternary:plus")
    assert est.get_params()["n_terms"] == 7
    other = clone(est).set_params(n_terms=3)
    assert other.n_terms == 3 and est.n_terms == 7


def test_features_shape_and_orthonormal_columns():
    xs = (np.arange(4000) + 0.5) / 4000 - 0.5
    feats = NDFourierFeatures(n_terms=4).fit_transform(xs[:, None])
    assert feats.shape == (4000, 9)
    gram = feats.T @ feats / len(xs)
    assert np.allclose(gram, np.eye(9), atol=1e-12)


def test_fit_function_matches_sawtooth_oracle():
    est = NDFourierSeries(n_terms=10).fit_function(sawtooth_nd(TernaryLine()))
    sines = est.coef_[11:]
    assert np.allclose(sines, [oracles.sawtooth_sine(n) for n in range(1, 11)], atol=1e-10)
    xs = np.array([[-0.3], [0.1], [0.4]])
    want = [oracles.sawtooth_partial(x, 10) for x in xs[:, 0]]
    assert np.allclose(est.predict(xs), want, atol=1e-12)


def test_least_squares_fit_recovers_trig_polynomial():
    xs = np.linspace(-0.5, 0.5, 200, endpoint=False)
    ys = 0.5 + 2 * math.sqrt(2) * np.sin(2 * np.pi * xs) - np.sqrt(2) * np.cos(6 * np.pi * xs)
    est = NDFourierSeries(n_terms=3).fit(xs[:, None], ys)
    assert est.coef_ == pytest.approx([0.5, 0, 0, -1, 2, 0, 0], abs=1e-10)
    assert est.score(xs[:, None], ys) == pytest.approx(1.0)


def test_upper_coordinates_round_trip():
    ctx = Benioff(Fraction(3, 2))
    lower_x = np.array([-0.25, 0.125, 0.375])
    upper_x = np.array([float(ctx.inverse(x)) for x in lower_x])
    lower_y = np.array([0.5, -0.75, 0.25])
    upper_y = np.array([float(ctx.inverse(y)) for y in lower_y])
    est = NDFourierSeries(bijection=ctx.spec, n_terms=1, coordinates="upper").fit(upper_x[:, None], upper_y)
    low = NDFourierSeries(bijection=ctx.spec, n_terms=1).fit(lower_x[:, None], lower_y)
    assert np.allclose(est.coef_, low.coef_)
    assert np.allclose(est.predict(upper_x[:, None]), upper_y)


def test_upper_floats_outside_cantor_set_rejected():
    # 1/27 = g(1/8) has no exact float, so its float neighbour is not an element
    est = NDFourierSeries(n_terms=1, coordinates="upper")
    with pytest.raises(NotInCantorSet):
        est.fit([[1 / 27], [0.25]], [0.0, 0.25])


def test_pipeline():
    xs = np.linspace(-0.5, 0.5, 50)[:, None]
    ys = np.cos(2 * np.pi * xs[:, 0])
    pipe = make_pipeline(NDFourierFeatures(n_terms=2), LinearRegression()).fit(xs, ys)
    assert np.allclose(pipe.predict(xs), ys, atol=1e-10)


def test_validation():
    with pytest.raises(NotFittedError):
        NDFourierSeries().predict([[0.0]])
    with pytest.raises(ValueError):
        NDFourierSeries(coordinates="sideways").fit([[0.0], [0.1]], [0.0, 1.0])
    with pytest.raises(ValueError):
        NDFourierFeatures().fit(np.zeros((3, 2)))
    with pytest.raises(ValueError):
        NDFourierSeries(bijection="nope").fit([[0.0], [0.1]], [0.0, 1.0])
    assert basis_matrix([0.0], 1, 0).shape == (1, 1)

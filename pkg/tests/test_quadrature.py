import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ndfourier.errors import QuadratureNonConvergent
from ndfourier.quadrature import QuadratureSpec, gauss_legendre, integrate


@given(st.integers(0, 30))
def test_polynomials_exact(k):
    assert integrate(lambda x: x**k, 0, 1) == pytest.approx(1 / (k + 1), rel=1e-14)


def test_nodes_cached_and_read_only():
    x, w = gauss_legendre(8)
    assert gauss_legendre(8)[0] is x
    assert w.sum() == pytest.approx(2)
    with pytest.raises(ValueError):
        x[0] = 0


def test_breakpoints_make_jumps_exact():
    step = lambda x: np.where(x < 0.3, 1.0, -2.0)  # noqa: E731
    exact = 0.3 - 2 * 0.7
    assert integrate(step, 0, 1, breakpoints=[0.3]) == pytest.approx(exact, abs=1e-15)


def test_reversed_and_empty():
    f = np.exp
    assert integrate(f, 1, 0) == pytest.approx(-(math.e - 1), rel=1e-15)
    assert integrate(f, 2, 2) == 0.0


def test_complex_integrand():
    v = integrate(lambda x: np.exp(1j * x), 0, math.pi)
    assert v == pytest.approx(2j, abs=1e-14)


def test_nonconvergence():
    with pytest.raises(QuadratureNonConvergent):
        integrate(np.exp, 0, 1, QuadratureSpec(nodes=2, panels=1, tol=1e-300, max_panels=64))


def test_parse():
    spec = QuadratureSpec.parse("8x16", tol=1e-9)
    assert (spec.panels, spec.nodes, spec.tol) == (8, 16, 1e-9)
    for bad in ("816", "0x16", "ax3"):
        with pytest.raises(ValueError):
            QuadratureSpec.parse(bad)

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import CONTEXTS, rationals
from ndfourier.arithmetic import NDNumber, one_prime, zero_prime
from ndfourier.errors import ContextMismatch, DomainError
from ndfourier.ndcomplex import (
    NDComplex,
    SeriesKind,
    cexp_i,
    conj,
    i_prime,
    modulus_sq,
    nd_cos,
    nd_exp,
    nd_sin,
    remainder_bound,
    taylor_partial,
)

F = Fraction
TOL = Fraction(1, 2**100)


def complexes(ctx):
    return st.tuples(rationals(8, 24), rationals(8, 24)).map(lambda p: NDComplex.from_lower(ctx, *p))


def angles():
    return st.integers(-(2**22), 2**22).map(lambda n: Fraction(n, 2**19))


@pytest.mark.parametrize("ctx", CONTEXTS, ids=lambda c: c.spec)
def test_complex_field_laws(ctx):
    @settings(max_examples=60)
    @given(complexes(ctx), complexes(ctx), complexes(ctx))
    def laws(A, B, C):
        assert (A + B) + C == A + (B + C)
        assert (A * B) * C == A * (B * C)
        assert A * B == B * A
        assert A * (B + C) == A * B + A * C
        assert conj(A * B) == conj(A) * conj(B)
        assert conj(A + B) == conj(A) + conj(B)
        assert modulus_sq(A * B) == modulus_sq(A) * modulus_sq(B)

    laws()


@pytest.mark.parametrize("ctx", CONTEXTS, ids=lambda c: c.spec)
def test_imaginary_unit(ctx):
    i = i_prime(ctx)
    assert i * i == NDComplex.of(-one_prime(ctx))
    assert NDComplex.of(one_prime(ctx)) == one_prime(ctx)


@pytest.mark.parametrize("ctx", CONTEXTS, ids=lambda c: c.spec)
@settings(max_examples=40)
@given(phi=angles())
def test_trig_identities(ctx, phi):
    X = NDNumber(ctx, phi)
    c, s = nd_cos(X), nd_sin(X)
    assert (c * c + s * s).close_to(one_prime(ctx), TOL)
    assert (cexp_i(X) * cexp_i(-X)).close_to(one_prime(ctx), TOL)


def test_values_are_dyadic_at_precision():
    ctx = CONTEXTS[3]
    v = nd_exp(NDNumber(ctx, 1)).lower
    assert v.denominator & (v.denominator - 1) == 0
    assert abs(float(v) - math.e) < 1e-15


def test_low_precision_degrades():
    ctx = CONTEXTS[3].with_precision(16)
    X = NDNumber(ctx, F(7, 8))
    dev = abs((nd_cos(X) * nd_cos(X) + nd_sin(X) * nd_sin(X)).lower - 1)
    assert TOL < dev < Fraction(1, 2**10)


@pytest.mark.parametrize("kind, fn", [("cos", math.cos), ("sin", math.sin), ("exp", math.exp)])
@pytest.mark.parametrize("x", [F(-5, 2), F(-1, 3), F(0), F(1, 2), F(2)])
def test_taylor_partial_within_bound(kind, fn, x):
    ctx = CONTEXTS[4]
    closed = {"cos": nd_cos, "sin": nd_sin, "exp": nd_exp}[kind](NDNumber(ctx, x)).lower
    for terms in (2, 5, 12):
        partial = taylor_partial(SeriesKind(kind), NDNumber(ctx, x), terms).lower
        assert abs(closed - partial) <= remainder_bound(kind, x, terms) + Fraction(1, 2**100)


def test_taylor_is_exact_rational():
    ctx = CONTEXTS[0]
    assert taylor_partial("exp", NDNumber(ctx, 1), 4).lower == F(1) + 1 + F(1, 2) + F(1, 6)
    assert taylor_partial("cos", NDNumber(ctx, 1), 3).lower == F(1) - F(1, 2) + F(1, 24)
    with pytest.raises(DomainError):
        taylor_partial("sin", NDNumber(ctx, 1), 0)


def test_mixed_contexts_rejected():
    with pytest.raises(ContextMismatch):
        NDComplex(zero_prime(CONTEXTS[0]), zero_prime(CONTEXTS[1]))

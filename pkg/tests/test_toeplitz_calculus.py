import numpy as np
import pytest
from hypothesis import given, strategies as st

from bergman_lab.errors import DomainError, ModelMismatchError, NonEllipticError, ParameterError
from bergman_lab.spectral_continuation import lambda0_model
from bergman_lab.toeplitz_calculus import (DiagonalGTO, complex_power, compose, estimate_order_symbol,
                                           leading_parametrix, parametrix, residual_slope)


def test_power_law_estimate():
    est = estimate_order_symbol(DiagonalGTO.power_law(1.7, -0.6, correction=3.0))
    assert est.order == pytest.approx(-0.6, abs=1e-8)
    assert est.symbol == pytest.approx(1.7, rel=1e-7)


def test_lambda0():
    est = estimate_order_symbol(DiagonalGTO.from_spectral(lambda0_model()))
    assert est.order == pytest.approx(-1.0, abs=1e-10)
    assert est.symbol == pytest.approx(0.5, rel=1e-9)


def test_negative_symbol_sign():
    est = estimate_order_symbol(DiagonalGTO.power_law(-2.0, 1.0))
    assert est.symbol == pytest.approx(-2.0)


@given(st.floats(-2, 2), st.floats(-2, 2), st.floats(0.1, 5), st.floats(0.1, 5))
def test_composition(m1, m2, c1, c2):
    A = DiagonalGTO.power_law(c1, m1, 1.0)
    B = DiagonalGTO.power_law(c2, m2, -0.5)
    AB = compose(A, B)
    est = estimate_order_symbol(AB)
    assert AB.order == pytest.approx(m1 + m2)
    assert est.order == pytest.approx(m1 + m2, abs=1e-7)
    assert est.symbol == pytest.approx(c1 * c2, rel=1e-6)


@given(st.floats(0.1, 10))
def test_rescaling(c):
    base = estimate_order_symbol(DiagonalGTO.power_law(1.0, 0.7, 2.0))
    scaled = estimate_order_symbol(DiagonalGTO.power_law(c, 0.7, 2.0))
    assert scaled.order == pytest.approx(base.order, abs=1e-10)
    assert scaled.symbol == pytest.approx(c * base.symbol, rel=1e-10)


def test_parametrix_exact():
    A = DiagonalGTO.power_law(2.0, 1.5, 1.0)
    k = np.arange(1, 1000)
    np.testing.assert_allclose(compose(A, parametrix(A)).eigenvalues(k), 1.0, rtol=1e-15)


def test_leading_parametrix_gains_one_order():
    A = DiagonalGTO.power_law(2.0, 1.5, 1.0)
    assert residual_slope(A, leading_parametrix(1.5, 2.0)) == pytest.approx(-1.0, abs=0.02)


def test_complex_power_semigroup():
    A = DiagonalGTO.from_spectral(lambda0_model())
    k = np.arange(200)
    s, t = 0.3 + 0.8j, -0.4 + 0.1j
    prod = complex_power(A, s).eigenvalues(k) * complex_power(A, t).eigenvalues(k)
    np.testing.assert_allclose(prod, complex_power(A, s + t).eigenvalues(k), rtol=1e-13)
    est = estimate_order_symbol(complex_power(A, 0.5))
    assert est.order == pytest.approx(-0.5, abs=1e-9)


def test_bounded_and_compact():
    k = np.arange(100000)
    lam = DiagonalGTO.from_spectral(lambda0_model()).eigenvalues(k)
    assert np.max(np.abs(lam)) <= 0.5
    assert abs(lam[-1]) < 1e-5


def test_mismatch():
    with pytest.raises(ModelMismatchError):
        estimate_order_symbol(DiagonalGTO(lambda k: np.log(k + 1) ** 3))
    with pytest.raises(ModelMismatchError):
        estimate_order_symbol(DiagonalGTO(lambda k: np.cos(k) + 0.1))


def test_non_elliptic():
    with pytest.raises(NonEllipticError):
        parametrix(DiagonalGTO(lambda k: k - 3.0))
    with pytest.raises(NonEllipticError):
        leading_parametrix(1.0, 0.0)


def test_complex_power_needs_positive():
    with pytest.raises(DomainError):
        complex_power(DiagonalGTO.power_law(-1.0, 1.0), 0.5)


def test_window():
    with pytest.raises(ParameterError):
        estimate_order_symbol(DiagonalGTO.power_law(1, 1), k_window=(100, 150))

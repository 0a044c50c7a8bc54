import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from bergman_lab.domain_model import DomainSpec
from bergman_lab.errors import AccuracyError, DomainError, ParameterError
from bergman_lab.kernels import (forelli_rudin_check, growth_degree, kernel_from_coefficients,
                                 kernel_from_moments, szego_kernel_disc)
from bergman_lab.moments import RadialWeightSpec

point = st.tuples(st.floats(0, 0.9), st.floats(0, 2 * math.pi)).map(
    lambda t: t[0] * complex(math.cos(t[1]), math.sin(t[1])))


@pytest.fixture(scope="module")
def bergman():
    return kernel_from_moments(RadialWeightSpec(0.0), d_max=20000)


class TestClosedForms:
    def test_disc(self, bergman):
        x, y = 0.5, 0.3j
        exact = 1 / (math.pi * (1 - x * np.conj(y)) ** 2)
        v, b = bergman.evaluate(x, y, 1e-13)
        assert abs(v - exact) <= 1e-13 + 1e-15
        assert b <= 1e-13

    def test_weighted(self):
        K = kernel_from_moments(RadialWeightSpec(1.0), d_max=5000)
        u = 0.6 * 0.7
        assert K(0.6, 0.7).real == pytest.approx(2 / (math.pi * (1 - u) ** 3), rel=1e-12)

    def test_ball(self):
        K = kernel_from_moments(RadialWeightSpec(0.0, domain=DomainSpec.ball(2)), d_max=5000)
        x = np.array([0.3, 0.4j])
        y = np.array([0.2j, -0.5])
        u = x @ np.conj(y)
        assert K(x, y) == pytest.approx(2 / (math.pi**2 * (1 - u) ** 3), rel=1e-12)

    def test_radius(self):
        K = kernel_from_moments(RadialWeightSpec(0.0, domain=DomainSpec.disc(2.0)), d_max=5000)
        x, y = 1.0 + 0.5j, -0.3
        exact = 4 / (math.pi * (4 - x * np.conj(y)) ** 2)
        assert K(x, y) == pytest.approx(exact, rel=1e-12)

    def test_normalized(self):
        K = kernel_from_moments(RadialWeightSpec(0.0, domain=DomainSpec.disc(measure="normalized")), 2000)
        assert K(0, 0).real == pytest.approx(1.0, rel=1e-14)

    def test_szego(self):
        S = szego_kernel_disc(5000)
        assert S(0.5j, 0.5j).real == pytest.approx(1 / (2 * math.pi * 0.75), rel=1e-13)


class TestCertification:
    def test_bound_holds(self, bergman, rng):
        for _ in range(100):
            x, y = (rng.uniform(0, 0.95) * np.exp(2j * np.pi * rng.uniform()) for _ in range(2))
            tol = 10.0 ** rng.uniform(-13, -8)
            v, b = bergman.evaluate(x, y, tol)
            exact = 1 / (math.pi * (1 - x * np.conj(y)) ** 2)
            assert b <= tol
            assert abs(v - exact) <= b + 1e-13 * abs(exact)

    def test_near_boundary_raises(self):
        K = kernel_from_moments(RadialWeightSpec(0.0), d_max=200)
        with pytest.raises(AccuracyError) as info:
            K.evaluate(0.999, 0.999, 1e-12)
        assert info.value.bound > 1e-12

    def test_outside_raises(self, bergman):
        with pytest.raises(DomainError):
            bergman.evaluate_u(1.0)

    def test_reach_shrinks_with_terms(self):
        a = kernel_from_moments(RadialWeightSpec(0.0), d_max=1000).reach()
        b = kernel_from_moments(RadialWeightSpec(0.0), d_max=10000).reach()
        assert b < a < 1


class TestStructure:
    @given(point, point)
    def test_hermitian(self, x, y):
        K = kernel_from_moments(RadialWeightSpec(0.5), d_max=3000)
        assert K(x, y) == pytest.approx(np.conj(K(y, x)), rel=1e-13, abs=1e-13)

    def test_gram_psd(self, bergman, rng):
        pts = 0.9 * np.sqrt(rng.uniform(size=12)) * np.exp(2j * np.pi * rng.uniform(size=12))
        G = bergman.gram(pts)
        np.testing.assert_allclose(G, G.conj().T, rtol=1e-13, atol=1e-13)
        assert np.linalg.eigvalsh(G)[0] > -1e-10 * np.abs(G).max()

    def test_reproducing_on_polynomials(self, rng):
        c = math.pi / (np.arange(30) + 1.0)
        K = kernel_from_coefficients(c)
        f = rng.normal(size=30) + 1j * rng.normal(size=30)
        x = 0.4 - 0.3j
        # <f, K_x> = sum c_k f_k conj(b_k conj(x)^k)
        inner = np.sum(c * f * np.conj(K.b() * np.conj(x) ** np.arange(30)))
        assert inner == pytest.approx(np.polynomial.polynomial.polyval(x, f), rel=1e-13)

    def test_growth_degree(self):
        d = np.arange(10001.0)
        # integer degree, rounded up
        assert growth_degree((1 + d) ** 2.5) == 3
        assert growth_degree((1 + d) ** 2.0) == 2

    def test_bad_coefficients(self):
        with pytest.raises(ParameterError):
            kernel_from_coefficients([1.0, 0.0])


@pytest.mark.parametrize("m", [1, 2, 3])
def test_forelli_rudin(m, rng):
    pts = 0.8 * np.sqrt(rng.uniform(size=6)) * np.exp(2j * np.pi * rng.uniform(size=6))
    assert forelli_rudin_check(m, list(zip(pts, pts[::-1]))) < 1e-10

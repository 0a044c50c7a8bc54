import math

import numpy as np
import pytest

from bergman_lab import moments
from bergman_lab.domain_model import DomainSpec
from bergman_lab.errors import AccuracyError, ParameterError
from bergman_lab.moments import (AngularWeightSpec, RadialWeightSpec, beta_moment, log_beta_moment,
                                 moment_sequence, monomial_gram, quadrature_moment)


def adaptive_simpson(f, a, b, tol, whole=None, depth=0):
    m = 0.5 * (a + b)
    fa, fm, fb = f(a), f(m), f(b)
    if whole is None:
        whole = (b - a) / 6 * (fa + 4 * fm + fb)
    lm, rm = 0.5 * (a + m), 0.5 * (m + b)
    left = (m - a) / 6 * (fa + 4 * f(lm) + fm)
    right = (b - m) / 6 * (fm + 4 * f(rm) + fb)
    if depth > 50 or abs(left + right - whole) <= 15 * tol:
        return left + right + (left + right - whole) / 15
    return (adaptive_simpson(f, a, m, tol / 2, left, depth + 1)
            + adaptive_simpson(f, m, b, tol / 2, right, depth + 1))


class TestBetaMoment:
    def test_uniform(self):
        assert beta_moment(0, 0.0) == pytest.approx(1.0, rel=1e-14)

    def test_cubic(self):
        assert beta_moment(3, 0.0) == pytest.approx(0.25, rel=1e-14)

    def test_half(self):
        assert beta_moment(1, 0.5) == pytest.approx(4 / 15, rel=1e-13)

    def test_radius(self):
        # int_0^4 t^2 dt = 64/3
        assert beta_moment(1, 0.0, 2, 2.0) == pytest.approx(64 / 3, rel=1e-13)

    def test_bad_alpha(self):
        with pytest.raises(ParameterError):
            beta_moment(0, -1.0)


class TestQuadrature:
    def test_polynomial_exact(self):
        v, _ = quadrature_moment(RadialWeightSpec(0.0, lambda t: np.ones_like(t)), 2)
        assert v == pytest.approx(1 / 3, rel=1e-12)

    def test_singular_endpoint(self):
        v, _ = quadrature_moment(RadialWeightSpec(-0.5, lambda t: np.ones_like(t)), 0)
        assert v == pytest.approx(2.0, rel=1e-12)

    def test_exp_weight_vs_simpson(self):
        v, err = quadrature_moment(RadialWeightSpec.exp_radial(0.5), 0)
        cut = 1e-8
        oracle = adaptive_simpson(lambda t: math.sqrt(1 - t) * math.exp(t), 0.0, 1 - cut, 1e-13)
        tail = math.e * (2 / 3) * cut**1.5
        assert abs(v - oracle) <= 1e-10 + tail
        assert err <= 1e-12 * v

    @pytest.mark.parametrize("alpha", [-0.9, -0.5, 0.0, 0.5, 2.5])
    def test_matches_beta(self, alpha):
        seq = moment_sequence(RadialWeightSpec(alpha, lambda t: np.ones_like(t)), 200)
        exact = np.exp(log_beta_moment(np.arange(201), alpha))
        assert seq.provenance == "quadrature"
        np.testing.assert_allclose(seq.values, exact, rtol=1e-12)

    def test_cap_raises(self, monkeypatch):
        monkeypatch.setattr(moments, "QUAD_MAX_NODES", 16)
        spec = RadialWeightSpec(0.0, lambda t: 2 + np.cos(300 * t))
        with pytest.raises(AccuracyError) as info:
            quadrature_moment(spec, 0)
        assert info.value.best is not None


class TestSequence:
    @pytest.mark.parametrize("spec", [RadialWeightSpec(0.3), RadialWeightSpec.exp_radial(-0.4),
                                      RadialWeightSpec(1.0, [2.0, -1.0]),
                                      RadialWeightSpec(0.0, domain=DomainSpec.disc(2.0))])
    def test_log_convex_and_ratio(self, spec):
        seq = moment_sequence(spec, 3000)
        L = seq.log_values
        assert np.all(2 * L[1:-1] <= L[:-2] + L[2:] + 1e-12)
        assert np.all(L[1:] < L[:-1] + 2 * math.log(spec.domain.R) + 1e-15)

    def test_polynomial_closed_form(self):
        seq = moment_sequence(RadialWeightSpec(0.0, [2.0, -1.0]), 3)
        # int t^d (2 - t) dt = 2/(d+1) - 1/(d+2)
        d = np.arange(4)
        np.testing.assert_allclose(seq.values, 2 / (d + 1) - 1 / (d + 2), rtol=1e-14)


class TestGram:
    def test_unweighted(self):
        M = monomial_gram(AngularWeightSpec(RadialWeightSpec(0.0)), 3)
        np.testing.assert_allclose(M, np.diag([math.pi, math.pi / 2, math.pi / 3]), atol=1e-15)

    def test_tridiagonal(self):
        w = AngularWeightSpec(RadialWeightSpec(0.0), {(0, 0): 2.0, (1, 0): 0.5, (0, 1): 0.5})
        M = monomial_gram(w, 2)
        np.testing.assert_allclose(M, [[2 * math.pi, math.pi / 4], [math.pi / 4, math.pi]], atol=1e-14)

    def test_log_weight_gram(self):
        w = AngularWeightSpec(RadialWeightSpec(0.0), {(0, 0): 2.0, (1, 1): -1.0})
        M = monomial_gram(w, 1)
        assert M[0, 0].real == pytest.approx(1.5 * math.pi)
        wn = AngularWeightSpec(RadialWeightSpec(0.0, domain=DomainSpec.disc(measure="normalized")),
                               {(0, 0): 2.0, (1, 1): -1.0})
        assert monomial_gram(wn, 1)[0, 0].real == pytest.approx(1.5)

    def test_radial_is_diagonal(self):
        spec = RadialWeightSpec(0.7)
        M = monomial_gram(AngularWeightSpec(spec), 12)
        mu = moment_sequence(spec, 11).values
        np.testing.assert_array_equal(M, np.diag(math.pi * mu).astype(complex))

    def test_bandwidth(self):
        w = AngularWeightSpec(RadialWeightSpec(0.0), {(0, 0): 3.0, (2, 0): 0.5j, (0, 2): -0.5j})
        M = monomial_gram(w, 8)
        assert w.bandwidth == 2
        assert np.all(M[np.abs(np.subtract.outer(range(8), range(8))) > 2] == 0)
        np.testing.assert_allclose(M, M.conj().T)

    def test_nonreal_polynomial(self):
        with pytest.raises(ParameterError):
            AngularWeightSpec(RadialWeightSpec(0.0), {(0, 0): 2.0, (1, 0): 0.5})

    def test_nonpositive_polynomial(self):
        with pytest.raises(ParameterError):
            AngularWeightSpec(RadialWeightSpec(0.0), {(0, 0): 0.5, (1, 0): 0.5, (0, 1): 0.5})

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.special import beta as B

from bergman_lab.errors import ParameterError
from bergman_lab.kernels import kernel_from_moments
from bergman_lab.moments import RadialWeightSpec
from bergman_lab.sobolev_norms import (HarmonicKernel, NormVariant, coefficient_form, decade_drift,
                                       equivalence_certified, equivalence_ratio, sobolev_kernel)


def test_first_derivative_example():
    f = coefficient_form(NormVariant("sharp", 1, 0.5), k_max=2)
    # weight 1 - |z|^2: ||z||^2 = pi/6 and ||1||^2 = pi/2
    assert f.Q[1] == pytest.approx(2 * math.pi / 3, rel=1e-14)
    assert f.Q[0] == pytest.approx(math.pi / 2, rel=1e-14)


@pytest.mark.parametrize("s", [-0.7, 0.0, 0.25, 0.45])
def test_m0_matches_weighted_bergman(s):
    K = kernel_from_moments(RadialWeightSpec(-2 * s), d_max=2000)
    S = sobolev_kernel(NormVariant("sharp", 0, s), k_max=2000)
    np.testing.assert_allclose(S.coeffs, K.coeffs, rtol=1e-12)


def test_variant_e_formula():
    m, s = 2, 0.6
    f = coefficient_form(NormVariant("e", m, s), k_max=50)
    k = np.arange(51.0)
    np.testing.assert_allclose(f.Q, (k ** (2 * m) + 1) * math.pi * B(k + 1, 2 * m - 2 * s + 1), rtol=1e-12)


def test_variant_c_point_terms():
    m, s = 2, 0.6
    c = coefficient_form(NormVariant("c", m, s), k_max=5).Q
    top = coefficient_form(NormVariant("b", m, s), k_max=5).Q
    zero = math.pi * B(np.arange(6.0) + 1, 2 * m - 2 * s + 1)
    # b = top + zeroth term, c = top + (k!)^2 for k < m
    np.testing.assert_allclose(c[:2], top[:2] - zero[:2] + [1.0, 1.0], rtol=1e-12)
    np.testing.assert_allclose(c[2:], top[2:] - zero[2:], rtol=1e-12)


def test_radius_scaling():
    a = coefficient_form(NormVariant("flat", 1, 0.3, R=1.0), 10).Q
    b = coefficient_form(NormVariant("flat", 1, 0.3, R=2.0), 10).Q
    k = np.arange(11)
    beta = 2 - 0.6
    np.testing.assert_allclose(b, a * 2.0 ** (2 * k + 2 + 2 * beta), rtol=1e-12)


@given(st.floats(-1.0, 0.8), st.floats(0.01, 0.6))
def test_monotone_in_s(s, ds):
    f1 = coefficient_form(NormVariant("sharp", 2, s), 200).Q
    f2 = coefficient_form(NormVariant("sharp", 2, s + ds), 200).Q
    assert np.all(f2 > f1)


def test_self_equivalence():
    v = NormVariant("b", 2, 0.6)
    assert equivalence_ratio(v, v, (0, 1000)) == (1.0, 1.0)


def test_decade_drift_settles():
    rows = decade_drift(NormVariant("a", 2, 0.6), NormVariant("d", 2, 0.6), 10, 4)
    assert [r[0] for r in rows] == [100, 1000, 10000, 100000]
    assert equivalence_certified(rows[-1][1:3])
    assert rows[-1][3] < rows[1][3] < 0.05


def test_mismatched_variants():
    with pytest.raises(ParameterError):
        equivalence_ratio(NormVariant("a", 2, 0.6), NormVariant("d", 1, 0.6), (1, 10))


def test_harmonic_kernel():
    v = NormVariant("sharp", 1, 0.3, space="harmonic")
    K = sobolev_kernel(v, 4000)
    assert isinstance(K, HarmonicKernel)
    x, y = 0.4 + 0.2j, -0.3j
    assert K(x, y) == pytest.approx(np.conj(K(y, x)), rel=1e-13)
    holo = sobolev_kernel(NormVariant("sharp", 1, 0.3), 4000)
    np.testing.assert_allclose(K.holo.coeffs, holo.coeffs, rtol=1e-15)
    np.testing.assert_allclose(K.anti.coeffs[1:], holo.coeffs[1:], rtol=1e-15)


@pytest.mark.parametrize("kw", [dict(tag="x", m=1, s=0.0), dict(tag="a", m=1, s=1.6),
                                dict(tag="sharp", m=1, s=1.2), dict(tag="d", m=1, s=1.2), dict(tag="a", m=-1, s=0.0),
                                dict(tag="a", m=1, s=0.0, space="bogus")])
def test_invalid(kw):
    with pytest.raises(ParameterError):
        NormVariant(**kw)


def test_exploration_flag():
    v = NormVariant("sharp", 1, 1.2, explore=True)
    assert np.all(coefficient_form(v, 100).Q > 0)
    # a, b and c only need an integrable weight
    for tag in "abc":
        NormVariant(tag, 1, 1.2)


def test_sharp_flat_ratio_tends_to_one():
    k = np.array([100, 1000, 10000, 100000])
    a = coefficient_form(NormVariant("sharp", 2, 0.6), 100000).Q[k]
    d = coefficient_form(NormVariant("flat", 2, 0.6), 100000).Q[k]
    gap = a / d - 1
    assert np.all(gap > 0) and np.all(np.diff(gap) < 0)
    assert gap[-1] < 1e-4
    # first-order decay in 1/k
    np.testing.assert_allclose(gap[1:] * k[1:], gap[-1] * k[-1], rtol=0.01)

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from bergman_lab.domain_model import DefiningData, DomainSpec, TheoremId, leading_constant, rho_values
from bergman_lab.errors import DomainError, ParameterError


def disc_point(radius=1.0):
    return st.tuples(st.floats(0, 1), st.floats(0, 2 * math.pi)).map(
        lambda t: radius * math.sqrt(t[0]) * complex(math.cos(t[1]), math.sin(t[1])))


class TestRhoValues:
    def test_center(self):
        assert rho_values(DomainSpec.disc(), 0, 0) == (1.0, 1.0)

    def test_disc_arithmetic(self):
        r, e = rho_values(DomainSpec.disc(), 0.6, 0.8)
        assert r == pytest.approx(0.64, abs=1e-15)
        assert e == pytest.approx(0.52, abs=1e-15)

    def test_ball(self):
        r, e = rho_values(DomainSpec.ball(2), [0.5, 0.5], [0.5, -0.5])
        assert r == pytest.approx(0.5)
        assert e == pytest.approx(1.0)

    def test_outside(self):
        with pytest.raises(DomainError):
            rho_values(DomainSpec.disc(), 1.2, 0)

    @given(disc_point(2.0), disc_point(2.0))
    def test_sesquianalytic_identity(self, x, y):
        data = DefiningData(DomainSpec.disc(2.0))
        lhs = 2 * data.rho_ext(x, y).real - data.rho(x) - data.rho(y)
        assert lhs == pytest.approx(abs(x - y) ** 2, abs=1e-13)

    @given(disc_point(), disc_point())
    def test_hermitian(self, x, y):
        data = DefiningData(DomainSpec.disc())
        assert data.rho_ext(x, y) == pytest.approx(np.conj(data.rho_ext(y, x)), abs=1e-15)

    def test_diagonal_restriction(self):
        data = DefiningData(DomainSpec.ball(2))
        x = np.array([0.3 + 0.1j, -0.2j])
        assert data.rho_ext(x, x).real == pytest.approx(data.rho(x), abs=1e-15)


class TestDomainSpec:
    def test_volumes(self):
        assert DomainSpec.disc(2.0).volume == pytest.approx(4 * math.pi)
        assert DomainSpec.ball(2).volume == pytest.approx(math.pi**2 / 2)

    @pytest.mark.parametrize("kw", [dict(kind="disc", R=-1.0), dict(kind="ball", n=0), dict(kind="torus")])
    def test_invalid(self, kw):
        with pytest.raises(ParameterError):
            DomainSpec(**kw)


class TestLeadingConstant:
    def test_weighted_unit_disc(self):
        p, a, lg = leading_constant(DomainSpec.disc(), TheoremId.weighted_bergman(0.0))
        assert (p, lg) == (2, False)
        assert a == pytest.approx(1 / math.pi, rel=1e-15)

    def test_sharp_unit_disc(self):
        p, a, lg = leading_constant(DomainSpec.disc(), TheoremId.sobolev_sharp(1, 0.5))
        assert p == pytest.approx(1)
        assert a == pytest.approx(1 / math.pi)
        assert not lg

    def test_radius_ratio(self):
        dom = DomainSpec.disc(2.0)
        a8 = leading_constant(dom, TheoremId.sobolev_sharp(2, 0.3))[1]
        a9 = leading_constant(dom, TheoremId.sobolev_flat(2, 0.3))[1]
        assert a8 / a9 == pytest.approx(16.0, rel=1e-14)

    @given(st.floats(-2.0, 0.49))
    def test_m0_reduction(self, s):
        dom = DomainSpec.disc()
        a = leading_constant(dom, TheoremId.weighted_bergman(-2 * s))
        b = leading_constant(dom, TheoremId.sobolev_sharp(0, s))
        assert a[0] == pytest.approx(b[0])
        assert a[1] == pytest.approx(b[1], rel=1e-12)

    def test_log_case(self):
        # n - 2s + 1 = 0 at s = 1: Gamma pole replaced by (-1)^1/0!
        p, a, lg = leading_constant(DomainSpec.disc(), TheoremId.sobolev_sharp(2, 1.0))
        assert lg and p == pytest.approx(0.0)
        assert a == pytest.approx(-1 / (math.gamma(3) * math.pi))

    def test_normalized_scales_by_volume(self):
        lam = leading_constant(DomainSpec.disc(), TheoremId.weighted_bergman(1.0))[1]
        nor = leading_constant(DomainSpec.disc(measure="normalized"), TheoremId.weighted_bergman(1.0))[1]
        assert nor / lam == pytest.approx(math.pi)

    @pytest.mark.parametrize("make", [lambda: TheoremId.weighted_bergman(-1.0), lambda: TheoremId.sobolev_sharp(1, 1.0),
                                      lambda: TheoremId("nonsense")])
    def test_invalid(self, make):
        with pytest.raises(ParameterError):
            make()

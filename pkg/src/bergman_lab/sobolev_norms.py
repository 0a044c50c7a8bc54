"""Diagonal Sobolev-type norms on the disc of radius R.

Every norm here is rotation invariant, so it acts on ``z^k`` (and on
``conj(z)^k`` in the harmonic space) through a single positive number
``Q_k = ||z^k||^2``.  Weights are ``|r|^beta`` with ``beta = 2m - 2s`` and
``r = |z|^2 - R^2``.

Forms are stored scaled, ``Q_k / R^(2k)``, so radii above 1 do not overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import betaln, gammaln

from .domain_model import DomainSpec
from .errors import ParameterError
from .kernels import DiagonalKernelSeries, growth_degree

TAGS = ("sharp", "flat", "a", "b", "c", "d", "e")
_STRICT = ("sharp", "flat", "d", "e")


@dataclass(frozen=True)
class NormVariant:
    """One of the norm realizations.

    ``sharp`` sums all holomorphic derivatives up to order m, ``flat`` uses
    powers of the radial field ``D = z d/dz``; ``a``-``e`` are the variant
    lists (``a`` = sharp, ``d`` = flat).  ``explore=True`` skips the
    ``m > 2s - 1`` hypothesis as long as the weight stays integrable.
    """

    tag: str
    m: int
    s: float
    R: float = 1.0
    space: str = "holomorphic"
    explore: bool = False

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ParameterError(f"unknown norm variant {self.tag!r}")
        if self.space not in ("holomorphic", "harmonic"):
            raise ParameterError(f"unknown space {self.space!r}")
        if int(self.m) != self.m or self.m < 0:
            raise ParameterError("m must be a nonnegative integer")
        if not self.R > 0:
            raise ParameterError("radius must be positive")
        if not self.m > self.s - 0.5:
            raise ParameterError(f"weight |r|^(2m-2s) not integrable: m={self.m}, s={self.s}")
        if self.tag in _STRICT and not self.explore and not self.m > 2 * self.s - 1:
            raise ParameterError(f"variant {self.tag} needs m > 2s - 1 (m={self.m}, s={self.s})")

    @property
    def beta(self) -> float:
        return 2.0 * self.m - 2.0 * self.s

    @property
    def domain(self) -> DomainSpec:
        return DomainSpec.disc(self.R)


@dataclass(frozen=True)
class CoefficientForm:
    """Scaled squared norms: ``scaled[k] = Q_k / R^(2k)``.

    ``anti`` holds the forms on ``conj(z)^k`` (harmonic space only; index 0
    unused since ``conj(z)^0 = z^0``).
    """

    scaled: np.ndarray
    variant: NormVariant
    anti: np.ndarray | None = None

    @property
    def Q(self) -> np.ndarray:
        k = np.arange(len(self.scaled))
        return self.scaled * self.variant.R ** (2.0 * k)


def _log_weighted(k: np.ndarray, beta: float, R: float, shift: int = 0) -> np.ndarray:
    # log of pi R^(2(k-shift)+2beta+2) B(k-shift+1, beta+1) / R^(2k)
    kk = k - shift
    return (math.log(math.pi) + (2 * beta + 2 - 2 * shift) * math.log(R)
            + betaln(kk + 1.0, beta + 1.0))


def _falling_sq(k: np.ndarray, j: int) -> np.ndarray:
    # (k!/(k-j)!)^2, zero where j > k
    out = np.zeros(len(k))
    ok = k >= j
    out[ok] = np.exp(2 * (gammaln(k[ok] + 1.0) - gammaln(k[ok] - j + 1.0)))
    return out


def _derivative_term(k, j, beta, R):
    # ||d^j z^k||^2 in weight |r|^beta, scaled by R^(-2k)
    out = np.zeros(len(k))
    ok = k >= j
    out[ok] = _falling_sq(k[ok], j) * np.exp(_log_weighted(k[ok], beta, R, j))
    return out


def _radial_power_term(k, j, beta, R):
    # ||D^j z^k||^2 = k^(2j) ||z^k||^2
    return k ** (2.0 * j) * np.exp(_log_weighted(k, beta, R))


def _form_on_monomial(v: NormVariant, k: np.ndarray, holo: bool) -> np.ndarray:
    """Sum over derivative pairs ``(nu, mu)`` acting on ``z^k`` (holo) or ``conj(z)^k``.

    ``d^nu dbar^mu z^k`` vanishes unless ``mu = 0``; by symmetry the
    antiholomorphic monomial keeps only ``nu = 0``.  The sum is written over
    all pairs so the harmonic restriction is computed, not assumed.
    """
    m, beta, R = v.m, v.beta, v.R
    k = k.astype(float)

    def surviving(nu, mu):
        return (mu == 0) if holo else (nu == 0)

    def order(nu, mu):
        return nu + mu

    pairs = [(nu, mu) for nu in range(m + 1) for mu in range(m + 1 - nu)]
    total = np.zeros(len(k))
    if v.tag in ("sharp", "a"):
        for nu, mu in pairs:
            if surviving(nu, mu):
                total += _derivative_term(k, order(nu, mu), beta, R)
    elif v.tag == "b":
        for nu, mu in pairs:
            if surviving(nu, mu) and order(nu, mu) in (0, m):
                total += _derivative_term(k, order(nu, mu), beta, R)
        if m == 0:
            total /= 2.0
    elif v.tag == "c":
        for nu, mu in pairs:
            if surviving(nu, mu) and order(nu, mu) == m:
                total += _derivative_term(k, m, beta, R)
        # point evaluations |d^nu dbar^mu f(0)|^2 for nu + mu < m
        for nu, mu in pairs:
            j = order(nu, mu)
            if j < m and surviving(nu, mu):
                hit = k == j
                total[hit] += np.exp(2 * gammaln(k[hit] + 1.0)) * R ** (-2.0 * k[hit])
    elif v.tag in ("flat", "d"):
        for j in range(m + 1):
            total += _radial_power_term(k, j, beta, R)
    elif v.tag == "e":
        total += _radial_power_term(k, m, beta, R) + _radial_power_term(k, 0, beta, R)
        if m == 0:
            total /= 2.0
    return total


def coefficient_form(v: NormVariant, k_max: int = 100_000) -> CoefficientForm:
    """Diagonal form ``Q_k`` of a norm variant for ``k = 0..k_max``.

    Examples
    --------
    >>> f = coefficient_form(NormVariant("sharp", 1, 0.5), k_max=2)
    >>> round(float(f.Q[1]), 12) == round(2 * math.pi / 3, 12)
    True
    """
    k = np.arange(k_max + 1)
    scaled = _form_on_monomial(v, k, holo=True)
    anti = _form_on_monomial(v, k, holo=False) if v.space == "harmonic" else None
    return CoefficientForm(scaled, v, anti)


def sobolev_kernel(v: NormVariant | CoefficientForm, k_max: int = 200_000):
    """Reproducing kernel ``sum_k (x ybar)^k / Q_k``.

    Holomorphic variants return a :class:`DiagonalKernelSeries`; harmonic
    ones return a :class:`HarmonicKernel`.
    """
    form = v if isinstance(v, CoefficientForm) else coefficient_form(v, k_max)
    var = form.variant
    coeffs = 1.0 / form.scaled
    series = DiagonalKernelSeries(coeffs, var.domain, growth_degree(coeffs), f"sobolev-{var.tag}")
    if var.space == "holomorphic":
        return series
    anti = 1.0 / form.anti[1:]
    anti_series = DiagonalKernelSeries(np.concatenate([[0.0], anti]), var.domain,
                                       growth_degree(anti), f"sobolev-{var.tag}-anti")
    return HarmonicKernel(series, anti_series)


@dataclass(frozen=True)
class HarmonicKernel:
    """``K(x, y) = sum_{k>=0} b_k (x ybar)^k + sum_{k>=1} b'_k (xbar y)^k``."""

    holo: DiagonalKernelSeries
    anti: DiagonalKernelSeries

    def __call__(self, x, y, tol: float = 1e-12) -> complex:
        x, y = complex(x), complex(y)
        return self.holo(x, y, tol / 2) + self.anti(y, x, tol / 2)


def equivalence_ratio(vA: NormVariant | CoefficientForm, vB: NormVariant | CoefficientForm,
                      k_range: tuple[int, int]) -> tuple[float, float]:
    """Empirical ``(inf, sup)`` of ``Q^A_k / Q^B_k`` over ``k_lo <= k <= k_hi``."""
    lo, hi = k_range
    fa = vA if isinstance(vA, CoefficientForm) else coefficient_form(vA, hi)
    fb = vB if isinstance(vB, CoefficientForm) else coefficient_form(vB, hi)
    a, b = fa.variant, fb.variant
    if (a.m, a.s, a.space, a.R) != (b.m, b.s, b.space, b.R):
        raise ParameterError("variants must share m, s, space and radius")
    r = fa.scaled[lo:hi + 1] / fb.scaled[lo:hi + 1]
    return float(r.min()), float(r.max())


def equivalence_certified(bounds: tuple[float, float]) -> bool:
    lo, hi = bounds
    return bool(np.isfinite(lo) and np.isfinite(hi) and lo > 0 and hi > 0)


def decade_drift(vA, vB, k_lo: int = 10, decades: int = 4) -> list[tuple[int, float, float, float]]:
    """Cumulative ``(inf, sup)`` over ``[k_lo, k_lo*10^j]`` and the relative change per decade.

    Returns rows ``(k_hi, inf, sup, drift)``; ``drift`` is the largest
    relative change of inf or sup since the previous decade (0 for the first).
    """
    k_top = k_lo * 10**decades
    fa = vA if isinstance(vA, CoefficientForm) else coefficient_form(vA, k_top)
    fb = vB if isinstance(vB, CoefficientForm) else coefficient_form(vB, k_top)
    rows = []
    prev = None
    for j in range(1, decades + 1):
        k_hi = k_lo * 10**j
        inf, sup = equivalence_ratio(fa, fb, (k_lo, k_hi))
        drift = 0.0 if prev is None else max(abs(inf / prev[0] - 1), abs(sup / prev[1] - 1))
        rows.append((k_hi, inf, sup, drift))
        prev = (inf, sup)
    return rows

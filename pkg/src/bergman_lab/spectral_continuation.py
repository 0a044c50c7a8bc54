"""Diagonal model of the Poisson-type operator on the unit circle.

Boundary measure is arclength ``dtheta``.  The harmonic extension of
``e^{ik theta}`` is ``z^k`` with ``||z^k||^2_{L^2(D)} = pi/(k+1)`` while
``||e^{ik theta}||^2 = 2 pi``, so the model eigenvalues are
``lambda_k = 1/(2(k+1))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .domain_model import DomainSpec
from .errors import AccuracyError, DomainError
from .kernels import DiagonalKernelSeries
from .moments import beta_moment

CIRCLE_NORM_SQ = 2 * math.pi
MAX_TERMS = 2_000_000


@dataclass(frozen=True)
class SpectralModel:
    """Eigenvalues ``k -> lambda_k`` (possibly complex after a power) with rank-one projections."""

    generator: Callable[[np.ndarray], np.ndarray]
    name: str = ""
    order_hint: float | None = None

    def eigenvalues(self, k) -> np.ndarray:
        return self.generator(np.asarray(k, dtype=float))


def _lambda0(k: np.ndarray) -> np.ndarray:
    return 1.0 / (2.0 * (k + 1.0))


def lambda0_model(check: bool = True) -> SpectralModel:
    """``lambda_k = 1/(2(k+1))``.

    With ``check`` the first few eigenvalues are recomputed from the disc
    moments ``pi * int_0^1 t^k dt`` divided by the circle norm.
    """
    if check:
        for k in range(4):
            ratio = math.pi * beta_moment(k, 0.0) / CIRCLE_NORM_SQ
            assert abs(ratio - _lambda0(np.array(k))) < 1e-15
    return SpectralModel(_lambda0, "Lambda0", order_hint=-1.0)


def power_operator(model: SpectralModel, s: complex) -> SpectralModel:
    """``A^s = sum_k lambda_k^s P_k`` on the principal branch."""
    s = complex(s)

    def gen(k, base=model.generator):
        lam = base(k).astype(complex)
        return np.exp(s * np.log(lam))

    return SpectralModel(gen, f"{model.name}^{s}", None)


def _szego_projection_coeff(y: complex, k: np.ndarray) -> np.ndarray:
    # S_y(theta) = sum_k conj(y)^k e^{ik theta} / (2 pi); P_k picks one term
    return np.conj(y) ** k / (2 * math.pi)


def _check_point(z) -> complex:
    z = complex(z)
    if abs(z) >= 1:
        raise DomainError(f"point {z} must lie in the open unit disc")
    return z


def _terms_needed(sigma: float, q: float, tol: float) -> tuple[int, float]:
    # |lambda_k^{2s-1} (x ybar)^k| / (2 pi) <= C (1+k)^g q^k
    g = max(0.0, 1.0 - 2.0 * sigma)
    C = 2.0 ** (1.0 - 2.0 * sigma) / (2 * math.pi)
    if q == 0.0:
        return 0, 0.0
    lo = 0
    step = 64
    while lo < MAX_TERMS:
        D = np.arange(lo, lo + step, dtype=float)
        ratio = q * ((D + 3) / (D + 2)) ** g
        with np.errstate(over="ignore", divide="ignore"):
            bound = np.where(ratio < 1,
                             C * (2 + D) ** g * q ** (D + 1) / np.maximum(1 - ratio, 1e-300),
                             np.inf)
        hit = np.flatnonzero(bound <= tol)
        if len(hit):
            return int(D[hit[0]]), float(bound[hit[0]])
        lo += step
        step *= 2
    raise AccuracyError(f"tolerance {tol:g} needs more than {MAX_TERMS} terms", best=None, bound=None)


def spectral_kernel(model: SpectralModel, s: complex, x, y, tol: float = 1e-14,
                    path: str = "projection") -> complex:
    """``K^(s)(x, y) = sum_k lambda_k^{2s-1} <P_k S_y, P_k S_x>``.

    ``path="projection"`` forms the projections of the Szego kernels
    explicitly; ``path="series"`` sums ``(2(k+1))^{1-2s} (x ybar)^k / (2 pi)``.
    Both carry the same certified tail bound (valid for the ``Lambda0``
    model).
    """
    x, y = _check_point(x), _check_point(y)
    s = complex(s)
    D, _ = _terms_needed(s.real, abs(x * np.conj(y)), tol)
    k = np.arange(D + 1, dtype=float)
    if path == "projection":
        lam = model.eigenvalues(k).astype(complex)
        weights = np.exp((2 * s - 1) * np.log(lam))
        inner = _szego_projection_coeff(y, k) * np.conj(_szego_projection_coeff(x, k)) * CIRCLE_NORM_SQ
        terms = weights * inner
    elif path == "series":
        terms = np.exp((1 - 2 * s) * np.log(2 * (k + 1))) * np.exp(k * np.log(complex(x * np.conj(y)))) \
            / (2 * math.pi) if x * np.conj(y) != 0 else np.array([2.0 ** (1 - 2 * s) / (2 * math.pi)])
    else:
        raise ValueError(f"unknown path {path!r}")
    return complex(math.fsum(terms.real) + 1j * math.fsum(terms.imag))


def spectral_series(s: float, d_max: int = 200_000) -> DiagonalKernelSeries:
    """``K^(s)`` for real ``s`` as a coefficient series (used for boundary fits)."""
    k = np.arange(d_max + 1, dtype=float)
    coeffs = (2 * (k + 1)) ** (1 - 2 * s) / (2 * math.pi)
    return DiagonalKernelSeries(coeffs, DomainSpec.disc(), float(max(0, math.ceil(1 - 2 * s))),
                                f"K^({s})")


def derived_constant(s: float) -> float:
    """Leading coefficient of ``K^(s)(x, x)`` in ``rho^{-(2-2s)}``: ``Gamma(2-2s) 2^{-2s} / pi``."""
    return math.gamma(2 - 2 * s) * 2.0 ** (-2 * s) / math.pi


def displayed_constant(s: float) -> float:
    """``Gamma(n-2s+1) J / (pi^n ||dr||^{2s})`` on the unit disc, i.e. ``Gamma(2-2s)/pi``."""
    return math.gamma(2 - 2 * s) / math.pi


def _rect_nodes(a: float, b: float, n: int) -> np.ndarray:
    return np.linspace(a, b, n + 1)


def _side_integral(f, z0: complex, z1: complex, n: int) -> tuple[list, list]:
    # trapezoid terms on [z0, z1] with n and n/2 intervals; nodes listed from z0
    t = _rect_nodes(0.0, 1.0, n)
    z = z0 + (z1 - z0) * t
    vals = np.array([f(zz) for zz in z])
    dz = (z1 - z0) / n
    w = np.full(n + 1, 1.0)
    w[0] = w[-1] = 0.5
    fine = vals * w * dz
    w2 = np.zeros(n + 1)
    w2[::2] = 1.0
    w2[0] = w2[-1] = 0.5
    coarse = vals * w2 * (2 * dz)
    return list(fine), list(coarse)


def _csum(terms) -> complex:
    terms = np.asarray(terms, dtype=complex)
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def holomorphy_contour_test(model: SpectralModel, corners: tuple[complex, complex], x, y,
                            n_nodes: int = 400, tol: float = 1e-15) -> complex:
    """``oint K^(s)(x, y) ds`` around the rectangle with opposite corners ``corners``.

    Trapezoid rule on each side plus one Richardson step (``n`` and ``n/2``
    intervals), summed exactly with ``math.fsum``.  Opposite sides of a
    degenerate rectangle reuse the same nodes, so they cancel exactly.
    """
    if n_nodes % 2:
        n_nodes += 1
    lo, hi = complex(corners[0]), complex(corners[1])
    a, b = min(lo.real, hi.real), max(lo.real, hi.real)
    c, d = min(lo.imag, hi.imag), max(lo.imag, hi.imag)

    def f(s):
        return spectral_kernel(model, s, x, y, tol)

    sides = [(complex(a, c), complex(b, c), 1), (complex(b, c), complex(b, d), 1),
             (complex(a, d), complex(b, d), -1), (complex(a, c), complex(a, d), -1)]
    fine, coarse = [], []
    for z0, z1, sign in sides:
        if z0 == z1:
            continue
        fi, co = _side_integral(f, z0, z1, n_nodes)
        fine += [sign * v for v in fi]
        coarse += [sign * v for v in co]
    return (4 * _csum(fine) - _csum(coarse)) / 3


def dbar_s(model: SpectralModel, s: complex, x, y, h: float, tol: float = 1e-15) -> complex:
    """Centered finite-difference ``dK/d(conj s)``; ``O(h^2)`` for holomorphic ``K``."""
    s = complex(s)

    def K(z):
        return spectral_kernel(model, z, x, y, tol)

    ds = (K(s + h) - K(s - h)) / (2 * h)
    dt = (K(s + 1j * h) - K(s - 1j * h)) / (2 * h)
    return 0.5 * (ds + 1j * dt)

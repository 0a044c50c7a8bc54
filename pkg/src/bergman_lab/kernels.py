"""Reproducing kernels of rotation-invariant spaces as diagonal power series.

A kernel is stored through its coefficients in the scaled variable
``u = <x, y> / R^2``: ``K(x, y) = sum_d beta_d u^d`` with
``beta_d = b_d R^(2d)``.  On the unit disc and ball the two coincide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .domain_model import DomainSpec, inner
from .errors import AccuracyError, DomainError, ParameterError
from .moments import RadialWeightSpec, moment_sequence

TAIL_SAFETY = 2.0


def growth_degree(coeffs: np.ndarray) -> float:
    """Smallest integer ``g >= 0`` with ``coeffs[d] = O((1+d)^g)`` judged on the last decade."""
    c = np.asarray(coeffs, dtype=float)
    D = len(c) - 1
    if D < 20:
        return float(max(0, math.ceil(math.log(c.max() / c[0] + 1.0))))
    lo = max(1, D // 10)
    slope = math.log(c[D] / c[lo]) / math.log((1 + D) / (1 + lo))
    return float(max(0, math.ceil(slope - 1e-9)))


@dataclass(frozen=True)
class DiagonalKernelSeries:
    """``K(x, y) = sum_d beta_d (<x, y>/R^2)^d`` on a disc or ball.

    Parameters
    ----------
    coeffs : ndarray
        Scaled coefficients ``beta_d = b_d R^(2d)``, ``d = 0..d_max``.
    gamma : float
        Growth degree used by the tail bound, ``beta_d <= C (1+d)^gamma``.
    """

    coeffs: np.ndarray
    domain: DomainSpec
    gamma: float
    name: str = ""

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        if c.ndim != 1 or len(c) == 0 or not np.all(np.isfinite(c)):
            raise ParameterError("kernel coefficients must be a finite 1-d sequence")
        object.__setattr__(self, "coeffs", c)

    @property
    def n(self) -> int:
        return self.domain.n

    @property
    def d_max(self) -> int:
        return len(self.coeffs) - 1

    def b(self, d=None):
        """Unscaled coefficients ``b_d``."""
        d = np.arange(len(self.coeffs)) if d is None else np.asarray(d)
        return self.coeffs[d] * self.domain.R ** (-2.0 * d)

    @property
    def tail_constant(self) -> float:
        d = np.arange(len(self.coeffs))
        return TAIL_SAFETY * float(np.max(np.abs(self.coeffs) / (1.0 + d) ** self.gamma))

    def tail_bounds(self, q: float) -> np.ndarray:
        """Bound on ``|sum_{d > D} beta_d u^d|`` for ``|u| = q``, for every ``D``.

        Entries are ``inf`` where the geometric majorant does not converge.
        """
        D = np.arange(len(self.coeffs), dtype=float)
        g = self.gamma
        if q == 0.0:
            return np.zeros(len(D))
        ratio = q * ((D + 3) / (D + 2)) ** g
        with np.errstate(over="ignore", divide="ignore"):
            logb = (math.log(self.tail_constant) + g * np.log(2 + D)
                    + (D + 1) * math.log(q))
            out = np.where(ratio < 1, np.exp(logb) / np.maximum(1 - ratio, 1e-300), np.inf)
        return out

    def evaluate_u(self, u: complex, tol: float = 1e-12, rtol: float = 0.0) -> tuple[complex, float]:
        """Sum the series at scaled argument ``u`` to accuracy ``max(tol, rtol*|K|)``.

        Returns ``(value, bound)``.
        """
        q = abs(u)
        if q >= 1:
            raise DomainError(f"|<x,y>|/R^2 = {q} must be < 1")
        if q == 0.0:
            return complex(self.coeffs[0]), 0.0
        bounds = self.tail_bounds(q)
        scale = abs(self.coeffs[0])
        ok = np.flatnonzero(bounds <= max(tol, rtol * scale))
        if len(ok) == 0:
            value = complex(np.polynomial.polynomial.polyval(u, self.coeffs))
            raise AccuracyError(
                f"tolerance {tol:g} unreachable with {self.d_max + 1} coefficients at |u|={q}",
                best=value, bound=float(bounds[-1]))
        D = int(ok[0])
        value = self._partial(u, D)
        if rtol > 0:
            # refine: relative target against the actual magnitude
            target = max(tol, rtol * abs(value))
            ok = np.flatnonzero(bounds <= target)
            if len(ok) == 0:
                raise AccuracyError(
                    f"relative tolerance {rtol:g} unreachable at |u|={q}",
                    best=value, bound=float(bounds[-1]))
            if ok[0] > D:
                D = int(ok[0])
                value = self._partial(u, D)
            return value, float(bounds[D])
        return value, float(bounds[D])

    def _partial(self, u: complex, D: int) -> complex:
        d = np.arange(D + 1)
        u = complex(u)
        if u.imag == 0.0:
            return complex(np.sum(self.coeffs[:D + 1] * u.real ** d))
        return complex(np.sum(self.coeffs[:D + 1] * np.exp(d * np.log(u))))

    def reach(self, tol: float = 1e-12, rtol: float = 1e-13) -> float:
        """Smallest ``1 - |u|`` for which diagonal evaluation still certifies ``rtol``."""
        lo, hi = 1e-9, 1.0
        for _ in range(60):
            mid = math.sqrt(lo * hi)
            try:
                self.evaluate_u(1 - mid, tol=tol, rtol=rtol)
                hi = mid
            except AccuracyError:
                lo = mid
        return hi

    def __call__(self, x, y, tol: float = 1e-12, rtol: float = 0.0) -> complex:
        return self.evaluate(x, y, tol, rtol)[0]

    def evaluate(self, x, y, tol: float = 1e-12, rtol: float = 0.0) -> tuple[complex, float]:
        """Kernel value ``K(x, y)`` with a certified tail bound.

        Raises
        ------
        DomainError
            If ``|<x, y>| >= R^2``.
        AccuracyError
            If ``tol`` cannot be met with the stored coefficients.
        """
        xv = self.domain.point(x)
        yv = self.domain.point(y)
        u = inner(xv, yv) / self.domain.R**2
        return self.evaluate_u(u, tol, rtol)

    def gram(self, points, tol: float = 1e-12) -> np.ndarray:
        pts = [self.domain.point(p) for p in points]
        return np.array([[self(a, b, tol) for b in pts] for a in pts])


def kernel_from_moments(spec: RadialWeightSpec, d_max: int | None = None) -> DiagonalKernelSeries:
    """Weighted Bergman kernel ``b_d = (n-1+d)! / (pi^n d! mu_d)``.

    Under the normalized measure every coefficient is multiplied by the
    domain volume.
    """
    mom = moment_sequence(spec, d_max)
    dom = spec.domain
    n = dom.n
    d = np.arange(len(mom), dtype=float)
    log_beta = (gammaln(n + d) - gammaln(d + 1) - n * math.log(math.pi)
                - mom.scaled_log_values())
    coeffs = np.exp(log_beta) * dom.measure_scale
    gamma = float(max(0, math.ceil(n + spec.alpha + 2 - 1e-12)))
    if not (spec.is_trivial or spec.is_polynomial):
        gamma = max(gamma, growth_degree(coeffs))
    return DiagonalKernelSeries(coeffs, dom, gamma, name=spec.name or f"alpha={spec.alpha}")


def kernel_from_coefficients(c, domain: DomainSpec | None = None,
                             gamma: float | None = None, name: str = "") -> DiagonalKernelSeries:
    """Kernel with ``b_k = 1/c_k``, where ``c_k = ||z^k||^2``."""
    domain = domain or DomainSpec.disc()
    c = np.asarray(c, dtype=float)
    if not np.all(c > 0):
        raise ParameterError("squared norms c_k must be positive")
    d = np.arange(len(c))
    coeffs = domain.R ** (2.0 * d) / c
    if gamma is None:
        gamma = growth_degree(coeffs)
    return DiagonalKernelSeries(coeffs, domain, float(gamma), name)


def szego_kernel_disc(d_max: int = 200_000) -> DiagonalKernelSeries:
    """Szego kernel of the unit circle with arclength measure, ``1/(2 pi (1 - x ybar))``."""
    return DiagonalKernelSeries(np.full(d_max + 1, 1.0 / (2 * math.pi)), DomainSpec.disc(), 0.0, "szego")


def forelli_rudin_check(m: int, samples, d_max: int = 4000) -> float:
    """Max relative deviation between ``K_w`` on the disc and the lifted ball kernel.

    ``w = (1 - |z|^2)^m``; the right side is ``(pi^m/m!)`` times the
    unweighted Bergman kernel of the unit ball in ``C^(1+m)`` restricted to
    ``(x, 0), (y, 0)``.
    """
    if int(m) != m or m < 1:
        raise ParameterError("m must be a positive integer")
    K = kernel_from_moments(RadialWeightSpec(float(m)), d_max=d_max)
    worst = 0.0
    for x, y in samples:
        t = complex(x) * np.conj(complex(y))
        lhs = K(x, y, tol=0.0, rtol=1e-15) if abs(t) > 0 else K(x, y)
        ball = math.factorial(1 + m) / math.pi ** (1 + m) * (1 - t) ** (-(2 + m))
        rhs = math.pi**m / math.factorial(m) * ball
        worst = max(worst, abs(lhs - rhs) / abs(rhs))
    return worst

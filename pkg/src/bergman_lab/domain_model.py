"""Model domains (disc of radius R, unit ball in C^n) and their boundary data.

All constants are stated relative to the defining function
``r(z) = |z|^2 - R^2``, whose sesquianalytic extension
``rho(x, y) = R^2 - <x, y>`` is exact.  On the boundary this choice gives
``J[rho] = R^2`` and ``||dr|| = R``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DomainError, ParameterError

Measure = Literal["lebesgue", "normalized"]


@dataclass(frozen=True)
class DomainSpec:
    """A disc ``{|z| < R}`` in C or the unit ball in C^n.

    ``measure="normalized"`` divides Lebesgue measure by the volume, which
    multiplies every reproducing kernel by ``volume``.
    """

    kind: Literal["disc", "ball"] = "disc"
    R: float = 1.0
    n: int = 1
    measure: Measure = "lebesgue"

    def __post_init__(self):
        if self.kind not in ("disc", "ball"):
            raise ParameterError(f"unknown domain kind {self.kind!r}")
        if self.measure not in ("lebesgue", "normalized"):
            raise ParameterError(f"unknown measure {self.measure!r}")
        if not self.R > 0:
            raise ParameterError("radius must be positive")
        if int(self.n) != self.n or self.n < 1:
            raise ParameterError("dimension must be a positive integer")
        if self.kind == "disc" and self.n != 1:
            raise ParameterError("a disc has dimension n = 1")
        if self.kind == "ball" and self.R != 1.0:
            raise ParameterError("balls are restricted to radius 1")

    @classmethod
    def disc(cls, R: float = 1.0, measure: Measure = "lebesgue") -> "DomainSpec":
        return cls("disc", float(R), 1, measure)

    @classmethod
    def ball(cls, n: int, measure: Measure = "lebesgue") -> "DomainSpec":
        return cls("ball", 1.0, int(n), measure)

    @property
    def volume(self) -> float:
        if self.kind == "disc":
            return math.pi * self.R**2
        return math.pi**self.n / math.factorial(self.n)

    @property
    def measure_scale(self) -> float:
        """Factor multiplying Lebesgue-measure kernels under this measure."""
        return self.volume if self.measure == "normalized" else 1.0

    @property
    def J_boundary(self) -> float:
        return self.R**2

    @property
    def grad_norm_boundary(self) -> float:
        return self.R

    def with_measure(self, measure: Measure) -> "DomainSpec":
        return DomainSpec(self.kind, self.R, self.n, measure)

    def point(self, x) -> np.ndarray:
        """Coerce ``x`` to a complex vector of length n."""
        z = np.atleast_1d(np.asarray(x, dtype=complex))
        if z.shape != (self.n,):
            raise DomainError(f"expected a point in C^{self.n}, got shape {z.shape}")
        return z

    def check_closed(self, x) -> np.ndarray:
        z = self.point(x)
        if float(np.vdot(z, z).real) > self.R**2 * (1 + 1e-14):
            raise DomainError(f"point {x!r} lies outside the closed domain")
        return z


def inner(x, y) -> complex:
    """``<x, y> = sum_j x_j conj(y_j)``."""
    x = np.atleast_1d(np.asarray(x, dtype=complex))
    y = np.atleast_1d(np.asarray(y, dtype=complex))
    return complex(np.sum(x * np.conj(y)))


@dataclass(frozen=True)
class DefiningData:
    domain: DomainSpec

    def r(self, z) -> float:
        z = self.domain.point(z)
        return float(np.vdot(z, z).real) - self.domain.R**2

    def rho(self, z) -> float:
        return -self.r(z)

    def rho_ext(self, x, y) -> complex:
        return self.domain.R**2 - inner(x, y)

    @property
    def J_boundary(self) -> float:
        return self.domain.J_boundary

    @property
    def grad_norm_boundary(self) -> float:
        return self.domain.grad_norm_boundary


def rho_values(domain: DomainSpec, x, y) -> tuple[float, complex]:
    """Return ``(rho(x), rho(x, y))`` for points of the closed domain."""
    xv = domain.check_closed(x)
    yv = domain.check_closed(y)
    data = DefiningData(domain)
    return data.rho(xv), data.rho_ext(xv, yv)


@dataclass(frozen=True)
class TheoremId:
    """Which leading-constant formula to evaluate.

    ``tag`` is one of ``"weighted_bergman"`` (params alpha, g_boundary),
    ``"sobolev_sharp"`` / ``"sobolev_flat"`` (params m, s) or ``"poisson_power"`` (s).
    """

    tag: str
    alpha: float = 0.0
    g_boundary: float = 0.0
    m: int = 0
    s: float = 0.0

    def __post_init__(self):
        if self.tag == "weighted_bergman":
            if not self.alpha > -1:
                raise ParameterError("weight exponent alpha must exceed -1")
        elif self.tag in ("sobolev_sharp", "sobolev_flat"):
            if int(self.m) != self.m or self.m < 0:
                raise ParameterError("m must be a nonnegative integer")
            if not self.m > 2 * self.s - 1:
                raise ParameterError(f"need m > 2s - 1 (m={self.m}, s={self.s})")
        elif self.tag != "poisson_power":
            raise ParameterError(f"unknown case tag {self.tag!r}")

    @classmethod
    def weighted_bergman(cls, alpha: float, g_boundary: float = 0.0) -> "TheoremId":
        return cls("weighted_bergman", alpha=float(alpha), g_boundary=float(g_boundary))

    @classmethod
    def sobolev_sharp(cls, m: int, s: float) -> "TheoremId":
        return cls("sobolev_sharp", m=int(m), s=float(s))

    @classmethod
    def sobolev_flat(cls, m: int, s: float) -> "TheoremId":
        return cls("sobolev_flat", m=int(m), s=float(s))

    @classmethod
    def poisson_power(cls, s: float) -> "TheoremId":
        return cls("poisson_power", s=float(s))


def _gamma_or_pole_residue(z: float) -> tuple[float, bool]:
    # Gamma(z) with the replacement (-1)^(k+1)/k! at z = -k, k = 0, 1, ...
    if z <= 0 and float(z).is_integer():
        k = int(-z)
        return (-1) ** (k + 1) / math.factorial(k), True
    return math.gamma(z), False


def leading_constant(domain: DomainSpec, thm: TheoremId) -> tuple[float, float, bool]:
    """Boundary exponent, leading coefficient and log flag for a kernel family.

    Returns ``(p, a, log_case)`` such that the on-diagonal kernel behaves
    like ``a * rho**(-p)`` (times ``log rho`` when ``log_case``).
    """
    n = domain.n
    J = domain.J_boundary
    dr = domain.grad_norm_boundary
    if thm.tag == "weighted_bergman":
        a = thm.alpha
        p = n + a + 1
        value = (math.gamma(n + a + 1) / (math.gamma(a + 1) * math.pi**n)
                 * J / math.exp(thm.g_boundary))
        log_case = False
    else:
        s = thm.s
        p = n + 1 - 2 * s
        g, log_case = _gamma_or_pole_residue(n - 2 * s + 1)
        if thm.tag == "sobolev_sharp":
            value = g / math.gamma(2 * thm.m - 2 * s + 1) * J / (math.pi**n * dr ** (2 * thm.m))
        elif thm.tag == "sobolev_flat":
            value = g / math.gamma(2 * thm.m - 2 * s + 1) * J / (math.pi**n * dr ** (4 * thm.m))
        else:
            value = g * J / (math.pi**n * dr ** (2 * s))
    return p, value * domain.measure_scale, log_case

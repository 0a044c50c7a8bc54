"""Radial moment sequences and monomial Gram matrices.

For a weight ``w = (R^2 - |z|^2)^alpha h(|z|^2)`` on the disc or ball the
squared norms of monomials reduce to the one-dimensional moments

    mu_d = int_0^{R^2} t^(d+n-1) (R^2 - t)^alpha h(t) dt.

Moments are stored by logarithm: ``R^(2d)`` over- or underflows long before
the series lengths used for boundary asymptotics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np
from scipy.special import betaln

from .domain_model import DomainSpec
from .errors import AccuracyError, ParameterError, ValidityError

QUAD_REL_TOL = 1e-12
QUAD_MAX_NODES = 512
QUAD_MIN_NODES = 8
DEFAULT_DMAX_CLOSED = 200_000
DEFAULT_DMAX_QUAD = 4096


@dataclass(frozen=True)
class RadialWeightSpec:
    """``w(z) = (R^2 - |z|^2)^alpha * h(|z|^2)`` with ``h > 0`` on ``[0, R^2]``.

    ``radial_factor`` is ``None`` (h = 1), a sequence of polynomial
    coefficients ``[c0, c1, ...]`` in ``t = |z|^2``, or a vectorized callable.
    ``g_boundary`` is ``log h(R^2)``, i.e. the value of g on the boundary.
    """

    alpha: float = 0.0
    radial_factor: object = None
    domain: DomainSpec = field(default_factory=DomainSpec.disc)
    name: str = ""

    def __post_init__(self):
        if not self.alpha > -1:
            raise ParameterError(f"alpha must exceed -1, got {self.alpha}")
        t = np.linspace(0.0, self.domain.R**2, 257)
        if not np.all(self.h(t) > 0):
            raise ParameterError("radial factor must be positive on [0, R^2]")

    @classmethod
    def exp_radial(cls, alpha: float, c: float = 1.0,
                   domain: DomainSpec | None = None) -> "RadialWeightSpec":
        """Weight ``rho^alpha * exp(c |z|^2)``, i.e. ``g(z) = c |z|^2``."""
        domain = domain or DomainSpec.disc()
        return cls(alpha, lambda t: np.exp(c * np.asarray(t)), domain, name=f"exp({c}t)")

    @property
    def is_trivial(self) -> bool:
        return self.radial_factor is None

    @property
    def is_polynomial(self) -> bool:
        return isinstance(self.radial_factor, (list, tuple, np.ndarray))

    def h(self, t):
        t = np.asarray(t, dtype=float)
        if self.radial_factor is None:
            return np.ones_like(t)
        if self.is_polynomial:
            return np.polynomial.polynomial.polyval(t, np.asarray(self.radial_factor, float))
        return np.asarray(self.radial_factor(t), dtype=float) * np.ones_like(t)

    @property
    def g_boundary(self) -> float:
        return math.log(float(self.h(self.domain.R**2)))


@dataclass(frozen=True)
class MomentSequence:
    """Moments ``mu_d`` for ``d = 0..d_max`` held as logarithms."""

    log_values: np.ndarray
    errors: np.ndarray
    provenance: str
    alpha: float
    n: int
    R: float

    def __len__(self):
        return len(self.log_values)

    @property
    def d_max(self) -> int:
        return len(self.log_values) - 1

    @property
    def values(self) -> np.ndarray:
        return np.exp(self.log_values)

    def scaled_log_values(self) -> np.ndarray:
        """``log(mu_d / R^(2d))``; bounded in d, used to build kernel series."""
        d = np.arange(len(self.log_values))
        return self.log_values - 2.0 * d * math.log(self.R)


def _check_alpha(alpha):
    if not alpha > -1:
        raise ParameterError(f"alpha must exceed -1, got {alpha}")


def log_beta_moment(d, alpha: float, n: int = 1, R: float = 1.0):
    """Logarithm of :func:`beta_moment`, vectorized over ``d``."""
    _check_alpha(alpha)
    d = np.asarray(d, dtype=float)
    return 2.0 * (d + n + alpha) * math.log(R) + betaln(d + n, alpha + 1.0)


def beta_moment(d: int, alpha: float, n: int = 1, R: float = 1.0) -> float:
    """``int_0^{R^2} t^(d+n-1) (R^2-t)^alpha dt = R^(2(d+n+alpha)) B(d+n, alpha+1)``."""
    return float(np.exp(log_beta_moment(d, alpha, n, R)))


def _jacobi_rules_01(N: int, alpha: float, p: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Gauss rules on [0, 1] for the weights ``u^p (1 - u)^alpha``, one per ``p``.

    Golub-Welsch on a batch of Jacobi matrices.  Weights are normalized to
    sum to one so the (possibly huge or tiny) total mass is never formed.
    Returns arrays of shape ``(len(p), N)``.
    """
    a = float(alpha)
    b = np.asarray(p, dtype=float)[:, None]
    k = np.arange(N, dtype=float)[None, :]
    s = 2 * k + a + b
    with np.errstate(invalid="ignore", divide="ignore"):
        diag = (b * b - a * a) / (s * (s + 2))
    diag[:, 0] = (b[:, 0] - a) / (a + b[:, 0] + 2)
    kk, ss = k[:, 1:], s[:, 1:]
    off = np.sqrt(4 * kk * (kk + a) * (kk + b) * (kk + a + b)
                  / (ss**2 * (ss + 1) * (ss - 1)))
    T = np.zeros((len(b), N, N))
    i = np.arange(N)
    T[:, i, i] = diag
    T[:, i[:-1], i[1:]] = off
    T[:, i[1:], i[:-1]] = off
    x, vec = np.linalg.eigh(T)
    w = vec[:, 0, :] ** 2
    return 0.5 * (x + 1.0), w / w.sum(axis=1, keepdims=True)


def _rule_moments(spec: RadialWeightSpec, N: int, d: np.ndarray) -> np.ndarray:
    # mu_d / R^(2(d+n+alpha)) = B(d+n, alpha+1) * E[h(R^2 U)], U ~ Beta(d+n, alpha+1)
    n = spec.domain.n
    R2 = spec.domain.R ** 2
    out = np.empty(len(d))
    block = max(1, 65536 // (N * N))
    for lo in range(0, len(d), block):
        u, w = _jacobi_rules_01(N, spec.alpha, d[lo:lo + block] + n - 1)
        out[lo:lo + block] = np.sum(w * spec.h(R2 * u), axis=1)
    return out * np.exp(betaln(d + n, spec.alpha + 1.0))


def _quadrature_scaled(spec: RadialWeightSpec, d: np.ndarray, strict: bool = True):
    values = np.full(len(d), np.nan)
    errors = np.full(len(d), np.inf)
    pending = np.ones(len(d), dtype=bool)
    N = QUAD_MIN_NODES
    prev = _rule_moments(spec, N, d)
    while N < QUAD_MAX_NODES and pending.any():
        N *= 2
        idx = np.flatnonzero(pending)
        cur = _rule_moments(spec, N, d[idx])
        diff = np.abs(cur - prev[idx])
        values[idx] = cur
        errors[idx] = diff
        done = diff <= QUAD_REL_TOL * np.abs(cur)
        pending[idx[done]] = False
        prev = np.full(len(d), np.nan)
        prev[idx] = cur
    if strict and pending.any():
        k = int(d[np.flatnonzero(pending)[0]])
        raise AccuracyError(
            f"Gauss-Jacobi moment d={k} not converged with {QUAD_MAX_NODES} nodes",
            best=values, bound=errors)
    return values, errors


def quadrature_moment(spec: RadialWeightSpec, d: int) -> tuple[float, float]:
    """Single moment by Gauss-Jacobi quadrature with node doubling.

    Returns ``(value, err)`` with ``err`` the last difference between
    successive rules.
    """
    dd = np.array([d], dtype=float)
    try:
        v, e = _quadrature_scaled(spec, dd)
    except AccuracyError as exc:
        scale = spec.domain.R ** (2 * (d + spec.domain.n + spec.alpha))
        raise AccuracyError(str(exc), best=float(exc.best[0]) * scale,
                            bound=float(exc.bound[0]) * scale) from None
    scale = spec.domain.R ** (2 * (d + spec.domain.n + spec.alpha))
    return float(v[0]) * scale, float(e[0]) * scale


def moment_sequence(spec: RadialWeightSpec, d_max: int | None = None) -> MomentSequence:
    """Moments ``mu_0..mu_{d_max}`` for a radial weight.

    Closed forms are used for ``h = 1`` (Beta function) and for polynomial
    ``h`` (sum of Beta functions); anything else goes through quadrature.
    """
    n, R, alpha = spec.domain.n, spec.domain.R, spec.alpha
    if spec.is_trivial or spec.is_polynomial:
        d_max = DEFAULT_DMAX_CLOSED if d_max is None else d_max
        d = np.arange(d_max + 1, dtype=float)
        if spec.is_trivial:
            logs = log_beta_moment(d, alpha, n, R)
        else:
            coeffs = np.asarray(spec.radial_factor, dtype=float)
            # mu_d = sum_j c_j R^(2j) * beta_moment(d + j); terms may alternate
            terms = np.array([c * R ** (2 * j) * np.exp(log_beta_moment(d + j, alpha, n, R)
                                                        - log_beta_moment(d, alpha, n, R))
                              for j, c in enumerate(coeffs)])
            total = terms.sum(axis=0)
            if not np.all(total > 0):
                raise ValidityError("polynomial radial factor produced a nonpositive moment")
            logs = log_beta_moment(d, alpha, n, R) + np.log(total)
        errs = np.abs(np.exp(logs - 2 * d * math.log(R))) * 1e-14
        return MomentSequence(logs, errs, "closed-form beta", alpha, n, R)
    d_max = DEFAULT_DMAX_QUAD if d_max is None else d_max
    d = np.arange(d_max + 1, dtype=float)
    vals, errs = _quadrature_scaled(spec, d)
    logs = np.log(vals) + 2.0 * (d + n + alpha) * math.log(R)
    return MomentSequence(logs, errs * R ** (2 * (n + alpha)), "quadrature", alpha, n, R)


@dataclass(frozen=True)
class AngularWeightSpec:
    """Radial weight times a real trigonometric polynomial ``p(z, zbar)``.

    ``poly`` maps ``(a, b)`` to the coefficient of ``z^a zbar^b``.
    """

    radial: RadialWeightSpec
    poly: Mapping[tuple[int, int], complex] = field(default_factory=lambda: {(0, 0): 1.0})

    def __post_init__(self):
        if self.radial.domain.kind != "disc":
            raise ParameterError("angular weights are defined on the disc only")
        for (a, b), c in self.poly.items():
            if a < 0 or b < 0:
                raise ParameterError("monomial exponents must be nonnegative")
            if abs(complex(c) - np.conj(complex(self.poly.get((b, a), 0.0)))) > 1e-14:
                raise ParameterError(f"p must be real: p[{a},{b}] != conj(p[{b},{a}])")
        if self.min_on_disc() <= 0:
            raise ParameterError("angular factor must be positive on the closed disc")

    @property
    def bandwidth(self) -> int:
        return max(abs(a - b) for a, b in self.poly)

    def p(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape, dtype=complex)
        for (a, b), c in self.poly.items():
            out += c * z**a * np.conj(z) ** b
        return out.real

    def w(self, z):
        z = np.asarray(z, dtype=complex)
        t = np.abs(z) ** 2
        R2 = self.radial.domain.R ** 2
        return np.maximum(R2 - t, 0.0) ** self.radial.alpha * self.radial.h(t) * self.p(z)

    def min_on_disc(self, n_r: int = 64, n_theta: int = 128) -> float:
        R = self.radial.domain.R
        r = np.linspace(0.0, R, n_r)
        th = np.linspace(0.0, 2 * np.pi, n_theta, endpoint=False)
        z = r[:, None] * np.exp(1j * th[None, :])
        return float(self.p(z).min())


def monomial_gram(spec: AngularWeightSpec, N: int, moments: MomentSequence | None = None) -> np.ndarray:
    """``M[j, k] = int z^j conj(z)^k w dA`` for ``0 <= j, k < N``.

    Only pairs with ``j + a == k + b`` survive the angular integration, so
    ``M`` is banded with half-bandwidth ``max |a - b|``.  The domain's
    measure convention is applied.
    """
    if N < 1:
        raise ParameterError("N must be at least 1")
    top = N - 1 + max(max(a, b) for a, b in spec.poly)
    if moments is None or moments.d_max < top:
        moments = moment_sequence(spec.radial, d_max=top)
    mu = np.exp(moments.log_values[:top + 1])
    M = np.zeros((N, N), dtype=complex)
    for (a, b), c in spec.poly.items():
        for j in range(N):
            k = j + a - b
            if 0 <= k < N:
                M[j, k] += c * math.pi * mu[j + a]
    M /= spec.radial.domain.measure_scale
    M = 0.5 * (M + M.conj().T)
    try:
        np.linalg.cholesky(M)
    except np.linalg.LinAlgError:
        raise ValidityError("monomial Gram matrix is not positive definite") from None
    return M

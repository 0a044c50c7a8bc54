"""Boundary singularity fitting and partie-finie Laplace integrals.

On-diagonal kernels are sampled on a geometric grid in ``rho`` and fitted
by weighted linear least squares against a basis of powers ``rho^{-e}``
and log terms ``rho^{-q} log rho``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import integrate, optimize, special

from .domain_model import DomainSpec
from .errors import AccuracyError, DomainError, FitError, ParameterError
from .kernels import DiagonalKernelSeries

EVAL_RTOL = 1e-13
RANK_TOL = 1e-13
LOG_PRESENT = 1e3
LOG_ABSENT = 10.0
NOISE_FLOOR = 1e-11


# ---------------------------------------------------------------- sampling

@dataclass(frozen=True)
class Samples:
    """On-diagonal values ``K(x_i, x_i)`` at ``rho(x_i) = rho_i``."""

    rho: np.ndarray
    values: np.ndarray
    errors: np.ndarray
    points: np.ndarray
    requested: int
    reach: float

    @property
    def truncated(self) -> bool:
        return len(self.rho) < self.requested


def geometric_grid(rho0: float = 1e-2, count: int = 14, ratio: float | None = 2.0,
                   floor: float | None = None) -> np.ndarray:
    """``rho_i = rho0 * ratio^{-i}``.

    With ``ratio=None`` the ratio is chosen so that ``count`` points span
    ``[floor, rho0]``.
    """
    if ratio is None:
        if floor is None or not 0 < floor < rho0:
            raise ParameterError("a floor below rho0 is needed to size the ratio")
        return np.geomspace(rho0, floor, count)
    return rho0 * float(ratio) ** -np.arange(count, dtype=float)


def sample_along_ray(kernel, direction=None, rho=None, domain: DomainSpec | None = None,
                     rtol: float = EVAL_RTOL) -> Samples:
    """Sample ``K(x, x)`` with ``x = sqrt(R^2 - rho) * direction``.

    ``kernel`` is a :class:`DiagonalKernelSeries` (evaluated through the
    exact scaled argument ``1 - rho/R^2``) or a callable ``f(x) -> value``.
    Points beyond the certified reach are dropped and reported.
    """
    rho = geometric_grid() if rho is None else np.asarray(rho, dtype=float)
    if isinstance(kernel, DiagonalKernelSeries):
        domain = kernel.domain
    domain = domain or DomainSpec.disc()
    R2 = domain.R**2
    if direction is None:
        direction = np.eye(domain.n, dtype=complex)[0]
    direction = domain.point(direction)
    direction = direction / np.linalg.norm(direction)
    if np.any(rho <= 0) or np.any(rho >= R2):
        raise DomainError("rho must lie in (0, R^2)")
    out_r, out_v, out_e, out_x = [], [], [], []
    reach = 0.0
    for r in rho:
        x = math.sqrt(R2 - r) * direction
        try:
            if isinstance(kernel, DiagonalKernelSeries):
                v, e = kernel.evaluate_u(1.0 - r / R2, tol=0.0, rtol=rtol)
            else:
                v, e = complex(kernel(x)), 0.0
        except AccuracyError:
            continue
        out_r.append(r)
        out_v.append(v.real)
        out_e.append(e)
        out_x.append(x)
        reach = r
    if len(out_r) == 0:
        raise AccuracyError("no grid point within the evaluator's reach", best=None, bound=None)
    return Samples(np.array(out_r), np.array(out_v), np.array(out_e), np.array(out_x),
                   len(rho), reach)


# ---------------------------------------------------------------- bases

@dataclass(frozen=True)
class SingularityBasis:
    """Columns ``("pow", e) -> rho^{-e}`` and ``("log", q) -> rho^{-q} log rho``."""

    terms: tuple

    @classmethod
    def expansion(cls, p: float, I: int = 2, logs: Sequence[float] = (), constant: bool = True,
                  extra: Sequence[tuple] = ()) -> "SingularityBasis":
        """``rho^{-p}, ..., rho^{-p+I}`` plus log terms, constant and extras, without duplicates."""
        terms = [("pow", float(p - j)) for j in range(I + 1)]
        terms += [("log", float(q)) for q in logs]
        if constant:
            terms.append(("pow", 0.0))
        terms += [(t, float(e)) for t, e in extra]
        seen, out = set(), []
        for t, e in terms:
            key = (t, round(e, 12))
            if key not in seen:
                seen.add(key)
                out.append((t, e))
        return cls(tuple(out))

    @classmethod
    def standard(cls, p: float, log_case: bool | None = None) -> "SingularityBasis":
        """Shape used for the acceptance fits: powers ``rho^{-p+j}`` above ``rho^1``,
        constant, ``rho``, and for integer ``p`` the terms ``log rho`` and ``rho log rho``.
        """
        if log_case is None:
            log_case = abs(p - round(p)) < 1e-12
        I = int(math.floor(p + 1 - 1e-9))
        logs = (0.0, -1.0) if log_case else ()
        return cls.expansion(p, I, logs, True, extra=(("pow", -1.0),))

    def __len__(self):
        return len(self.terms)

    def design(self, rho: np.ndarray) -> np.ndarray:
        rho = np.asarray(rho, dtype=float)
        cols = []
        for t, e in self.terms:
            col = rho ** (-e)
            if t == "log":
                col = col * np.log(rho)
            cols.append(col)
        return np.column_stack(cols)

    def label(self, i: int) -> str:
        t, e = self.terms[i]
        base = "1" if e == 0 else f"rho^{-e:g}"
        return f"{base}*log(rho)" if t == "log" else base

    def index(self, kind: str, e: float) -> int:
        for i, (t, ee) in enumerate(self.terms):
            if t == kind and abs(ee - e) < 1e-12:
                return i
        raise KeyError((kind, e))


@dataclass(frozen=True)
class SingularityFit:
    """Least-squares fit; ``residual`` is the max relative misfit over samples."""

    basis: SingularityBasis
    coeffs: np.ndarray
    stderr: np.ndarray
    residual: float
    condition: float
    p: float | None = None

    def coeff(self, kind: str, e: float) -> float:
        return float(self.coeffs[self.basis.index(kind, e)])

    @property
    def leading(self) -> float:
        return float(self.coeffs[0])

    def model(self, rho) -> np.ndarray:
        return self.basis.design(rho) @ self.coeffs

    def as_dict(self) -> dict:
        return {self.basis.label(i): float(c) for i, c in enumerate(self.coeffs)}


def _collinear_pair(A: np.ndarray) -> tuple[int, int]:
    U = A / np.linalg.norm(A, axis=0)
    C = np.abs(U.T @ U) - np.eye(A.shape[1])
    i, j = np.unravel_index(np.argmax(C), C.shape)
    return int(min(i, j)), int(max(i, j))


def fit_singularity(samples: Samples | tuple, basis: SingularityBasis,
                    relative: bool = True, p: float | None = None) -> SingularityFit:
    """Weighted least squares of samples against ``basis``.

    Rows are divided by the sample magnitude (``relative=True``), columns
    are scaled to unit max, and the system is solved through a QR
    factorization.

    Raises
    ------
    FitError
        If the scaled design matrix is numerically rank deficient; the
        message names the most collinear pair of columns.
    """
    rho, y = (samples.rho, samples.values) if isinstance(samples, Samples) else samples
    rho = np.asarray(rho, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(rho) < len(basis) + 2:
        raise ParameterError(f"need at least {len(basis) + 2} samples for {len(basis)} columns, "
                             f"got {len(rho)}")
    A = basis.design(rho)
    wrow = 1.0 / np.abs(y) if relative else np.ones_like(y)
    Aw = A * wrow[:, None]
    yw = y * wrow
    scale = np.abs(Aw).max(axis=0)
    As = Aw / scale
    Q, Rm = np.linalg.qr(As)
    diag = np.abs(np.diag(Rm))
    if diag.min() < RANK_TOL * diag.max():
        i, j = _collinear_pair(As)
        raise FitError(f"collinear columns {basis.label(i)} and {basis.label(j)}",
                       pair=(basis.label(i), basis.label(j)))
    cs = np.linalg.solve(Rm, Q.T @ yw)
    coeffs = cs / scale
    res = yw - As @ cs
    dof = max(1, len(y) - len(basis))
    sigma2 = float(res @ res) / dof
    Rinv = np.linalg.inv(Rm)
    cov = sigma2 * (Rinv @ Rinv.T)
    stderr = np.sqrt(np.diag(cov)) / scale
    resid = float(np.max(np.abs(res))) if relative else float(np.max(np.abs(res / y)))
    cond = float(diag.max() / diag.min())
    return SingularityFit(basis, coeffs, stderr, resid, cond, p)


def fit_free_exponent(samples: Samples, basis_for: Callable[[float], SingularityBasis],
                      bounds: tuple[float, float], grid: int = 81) -> SingularityFit:
    """Minimize the fit residual over the principal exponent ``p``.

    A coarse scan over ``bounds`` locates the basin, then a bounded Brent
    search refines it.
    """
    def resid(p):
        try:
            return fit_singularity(samples, basis_for(p)).residual
        except FitError:
            return np.inf

    ps = np.linspace(bounds[0], bounds[1], grid)
    rs = np.array([resid(p) for p in ps])
    i = int(np.argmin(rs))
    lo, hi = ps[max(0, i - 1)], ps[min(grid - 1, i + 1)]
    res = optimize.minimize_scalar(lambda p: math.log(resid(p) + 1e-300), bounds=(lo, hi),
                                   method="bounded", options={"xatol": 1e-10})
    p = float(res.x)
    fit = fit_singularity(samples, basis_for(p))
    return SingularityFit(fit.basis, fit.coeffs, fit.stderr, fit.residual, fit.condition, p)


def fit_two_exponents(samples: Samples, basis_for: Callable[[float, float], SingularityBasis],
                      bounds1: tuple[float, float], bounds2: tuple[float, float],
                      grid: int = 41) -> tuple[float, float, SingularityFit]:
    """Free fit of two leading exponents ``p1 > p2`` (grid scan then Nelder-Mead)."""
    def resid(v):
        p1, p2 = v
        if not (bounds1[0] <= p1 <= bounds1[1] and bounds2[0] <= p2 <= bounds2[1]) or p2 >= p1 - 1e-6:
            return 1e3
        try:
            return math.log(fit_singularity(samples, basis_for(p1, p2)).residual + 1e-300)
        except FitError:
            return 1e3

    best = None
    for p1 in np.linspace(*bounds1, grid):
        for p2 in np.linspace(*bounds2, grid):
            r = resid((p1, p2))
            if best is None or r < best[0]:
                best = (r, p1, p2)
    step1 = (bounds1[1] - bounds1[0]) / (grid - 1)
    step2 = (bounds2[1] - bounds2[0]) / (grid - 1)
    x0 = np.array([best[1], best[2]])
    simplex = np.array([x0, x0 + [step1, 0], x0 + [0, step2]])
    res = optimize.minimize(resid, x0, method="Nelder-Mead",
                            options={"initial_simplex": simplex, "xatol": 1e-10, "fatol": 1e-12,
                                     "maxiter": 4000})
    p1, p2 = map(float, res.x)
    return p1, p2, fit_singularity(samples, basis_for(p1, p2))


@dataclass(frozen=True)
class LogDetection:
    present: bool | None
    b: float
    stderr: float
    improvement: float
    fit_with: SingularityFit
    fit_without: SingularityFit


def detect_log(samples: Samples, p: float, log_q: float = 0.0, I: int | None = None,
               extra_logs: Sequence[float] = (), extra: Sequence[tuple] = ()) -> LogDetection:
    """Decide whether a ``rho^{-log_q} log rho`` term is present.

    Present when adding the column improves the residual by at least
    ``1e3`` and the coefficient exceeds ten standard errors; absent when the
    improvement is below ``10`` or the log-free fit is already at the noise
    floor; ``None`` (indeterminate) otherwise.  ``b`` is read from the
    richer model.
    """
    I = int(math.floor(p - 1e-9)) if I is None else I
    base = SingularityBasis.expansion(p, I, extra_logs, True, extra)
    richer = SingularityBasis.expansion(p, I, (log_q, *extra_logs), True, extra)
    f0 = fit_singularity(samples, base)
    f1 = fit_singularity(samples, richer)
    b = f1.coeff("log", log_q)
    se = float(f1.stderr[richer.index("log", log_q)])
    improvement = f0.residual / max(f1.residual, 1e-300)
    if f0.residual <= NOISE_FLOOR or improvement < LOG_ABSENT:
        present = False
    elif improvement >= LOG_PRESENT and abs(b) > 10 * se:
        present = True
    else:
        present = None
    return LogDetection(present, b, se, improvement, f1, f0)


# ---------------------------------------------------------------- partie finie

def _richardson(values: np.ndarray, ratio: float, powers: Sequence[float]) -> np.ndarray:
    """Richardson table; row ``i`` eliminates ``h^powers[i]`` with step ratio ``ratio``."""
    T = np.array(values, dtype=float)
    for pw in powers:
        f = ratio**pw
        T = (f * T[1:] - T[:-1]) / (f - 1)
        if len(T) == 1:
            break
    return T


@functools.lru_cache(maxsize=1)
def euler_gamma_limit(levels: int = 14) -> float:
    """``lim (H_m - log m)`` from ``m = 2^1..2^levels`` with Richardson acceleration in ``1/m``."""
    ms = [2**i for i in range(1, levels + 1)]
    seq = []
    for m in ms:
        H = math.fsum(1.0 / j for j in range(1, m + 1))
        seq.append(H - math.log(m))
    # expansion in 1/m, 1/m^2, ...; steps halve so the ratio is 2
    return float(_richardson(np.array(seq), 2.0, range(1, levels))[0])


def euler_gamma() -> float:
    """Euler-Mascheroni constant, cross-checked against numpy's value."""
    g = euler_gamma_limit()
    if abs(g - np.euler_gamma) > 1e-12:
        raise AccuracyError("Euler constant limit disagrees with reference", best=g,
                            bound=abs(g - np.euler_gamma))
    return g


def harmonic_number(k: int) -> float:
    return math.fsum(1.0 / j for j in range(1, k + 1))


def pole_constant(k: int) -> float:
    """``C_k = lim (sum_{j=k+1}^m 1/j - log m) = gamma - H_k``."""
    return euler_gamma() - harmonic_number(k)


def _pole_index(s: complex) -> int | None:
    s = complex(s)
    if s.imag == 0 and s.real <= -1 and float(s.real).is_integer():
        return int(-s.real) - 1
    return None


def partie_finie(s: complex, p: complex) -> complex:
    """Finite part of ``int_0^inf e^{-tp} t^s dt``.

    ``Gamma(s+1)/p^{s+1}`` off the poles; at ``s = -k-1`` the value
    ``((-1)^{k+1}/k!) p^k (log p + C_k)``.  Principal branches throughout.
    """
    p = complex(p)
    if not p.real > 0:
        raise DomainError("Re p must be positive")
    k = _pole_index(s)
    logp = complex(np.log(p))
    if k is not None:
        return (-1) ** (k + 1) / math.factorial(k) * p**k * (logp + pole_constant(k))
    s = complex(s)
    return complex(special.gamma(s + 1)) * complex(np.exp(-(s + 1) * logp))


def _taylor_remainder(x: np.ndarray, K: int) -> np.ndarray:
    # e^{-x} - sum_{j<K} (-x)^j/j!, stable for small x
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = x < 2.0
    xs = x[small]
    acc = np.zeros_like(xs)
    term = (-xs) ** K / math.factorial(K)
    for j in range(K, K + 60):
        acc += term
        term = term * (-xs) / (j + 1)
    out[small] = acc
    xb = x[~small]
    out[~small] = np.exp(-xb) - sum((-xb) ** j / math.factorial(j) for j in range(K))
    return out


def regularized_laplace_oracle(s: float, p: float, pole_limit: bool = False) -> float:
    """Independent value of the finite part by Taylor subtraction on ``[0, 1]``.

    For ``s > -1`` this is the convergent integral.  For ``-K-1 < s <= -1``
    the first ``K`` Taylor terms of ``e^{-tp}`` are subtracted and their
    integrals added back analytically.  At a pole ``s = -k-1`` (requires
    ``pole_limit``) the divergent ``j = k`` term is subtracted but its
    (logarithmic) contribution dropped, which is the finite part.
    """
    s, p = float(s), float(p)
    if not p > 0:
        raise DomainError("p must be positive")
    k = _pole_index(s)
    if k is not None and not pole_limit:
        raise ParameterError("s is a pole; pass pole_limit=True")
    K = 0 if s > -1 else (k + 1 if k is not None else int(math.floor(-s)))
    opts = dict(limit=200, epsabs=0.0, epsrel=1e-13)

    def g(t):
        if t == 0.0:
            return (-p) ** K / math.factorial(K)
        return float(_taylor_remainder(np.array([t * p]), K)[0]) * t ** (-float(K))

    head, e1 = integrate.quad(g, 0.0, 1.0, weight="alg",
                              wvar=(s + K, 0.0), **opts)
    tail, e2 = integrate.quad(lambda t: math.exp(-t * p) * t**s, 1.0, np.inf, **opts)
    added = 0.0
    for j in range(K):
        if k is not None and j == k:
            continue
        added += (-p) ** j / (math.factorial(j) * (s + j + 1))
    if e1 + e2 > 1e-9 * max(1.0, abs(head) + abs(tail)):
        raise AccuracyError("oracle quadrature did not converge", best=head + tail + added,
                            bound=e1 + e2)
    return head + added + tail


def pole_approach(k: int, p: float, eps: Sequence[float] = (1e-3, 1e-4, 1e-5)) -> float:
    """``lim_{e->0} [Gamma(s+1)/p^{s+1} - residue/e]`` at ``s = -k-1+e``, Richardson in ``e``."""
    res = (-1) ** k / math.factorial(k) * p**k

    def gamma_near_pole(e):
        # Gamma(-k+e) = Gamma(1+e) / (e (e-1) ... (e-k)), avoiding reflection near the pole
        den = math.prod(e - j for j in range(k + 1))
        return special.gamma(1 + e) / den

    vals = np.array([(gamma_near_pole(e) * p ** (k - e) - res / e) for e in eps])
    ratio = eps[0] / eps[1]
    return float(_richardson(vals, ratio, range(1, len(vals)))[0])

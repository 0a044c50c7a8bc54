"""Finite sections of Toeplitz operators on the Bergman space of a disc.

Matrices are written in the orthonormal basis ``e_k = z^k / sqrt(c_k)`` of
the unweighted space, with the operator convention
``T[j, k] = <T e_k, e_j>``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve
from scipy.special import roots_jacobi

from .errors import ConditioningWarning, ParameterError, ValidityError
from .moments import AngularWeightSpec, RadialWeightSpec, monomial_gram

COND_LIMIT = 1e12


def basis_norms(spec: AngularWeightSpec | RadialWeightSpec, N: int) -> np.ndarray:
    """``c_k = ||z^k||^2`` in the unweighted space, ``k < N``."""
    radial = spec.radial if isinstance(spec, AngularWeightSpec) else spec
    dom = radial.domain
    k = np.arange(N, dtype=float)
    return math.pi * dom.R ** (2 * k + 2) / (k + 1) / dom.measure_scale


def basis_values(z, c: np.ndarray) -> np.ndarray:
    """``e_k(z)`` for ``k < len(c)``."""
    z = complex(z)
    k = np.arange(len(c))
    return z**k / np.sqrt(c)


@dataclass(frozen=True)
class FiniteSection:
    """Hermitian ``N x N`` section with the basis norms it refers to."""

    entries: np.ndarray
    c: np.ndarray

    @property
    def N(self) -> int:
        return self.entries.shape[0]

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.entries)[0])


@dataclass(frozen=True)
class KernelVector:
    """Coefficients of a kernel function in the basis ``e_k``."""

    coeffs: np.ndarray
    x: complex
    c: np.ndarray
    condition: float = 1.0

    def __call__(self, y) -> complex:
        return complex(basis_values(y, self.c) @ self.coeffs)


def kernel_vector(x, c: np.ndarray) -> np.ndarray:
    """``(K_x)_k = conj(e_k(x))``."""
    return np.conj(basis_values(x, c))


def _check_pd(A: np.ndarray, what: str):
    if not np.allclose(A, A.conj().T, rtol=1e-12, atol=1e-14 * np.abs(A).max()):
        raise ValidityError(f"{what} is not Hermitian")
    if np.linalg.eigvalsh(A)[0] <= 0:
        raise ValidityError(f"{what} is not positive definite")


def build_toeplitz(w: AngularWeightSpec, N: int) -> FiniteSection:
    """Section of ``T_w``: ``T[j, k] = M[k, j] / sqrt(c_j c_k)`` with ``M`` the weighted Gram matrix."""
    M = monomial_gram(w, N)
    c = basis_norms(w, N)
    s = np.sqrt(c)
    T = M.T / np.outer(s, s)
    _check_pd(T, "Toeplitz section")
    return FiniteSection(T, c)


def _solve_pd(A: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, float]:
    cond = float(np.linalg.cond(A))
    if cond > COND_LIMIT:
        warnings.warn(f"condition number {cond:.3g} exceeds {COND_LIMIT:g}", ConditioningWarning,
                      stacklevel=3)
    try:
        fac = cho_factor(A, lower=True)
    except np.linalg.LinAlgError:
        raise ValidityError("matrix is not positive definite") from None
    return cho_solve(fac, b), cond


def weighted_kernel_via_inverse(w: AngularWeightSpec | FiniteSection, x, N: int | None = None) -> KernelVector:
    """Solve ``T_w h = K_x``; ``h`` represents the section of ``K_{w,x}``.

    ``w`` may be a weight or an already built section.
    """
    T = w if isinstance(w, FiniteSection) else build_toeplitz(w, N)
    h, cond = _solve_pd(T.entries, kernel_vector(x, T.c))
    return KernelVector(h, complex(x), T.c, cond)


def quadratic_form_kernel(A: FiniteSection | np.ndarray, x, y, c: np.ndarray | None = None) -> complex:
    """``<T^{-1} K_y, T^{-1} K_x>`` with ``T = A^{1/2}``.

    The square root comes from a Hermitian eigendecomposition; the result
    equals ``sum_jk e_j(x) (A^{-1})[j, k] conj(e_k(y))``.
    """
    if isinstance(A, FiniteSection):
        mat, c = A.entries, A.c
    else:
        mat = np.asarray(A)
        if c is None:
            raise ParameterError("basis norms c are required with a bare matrix")
    _check_pd(mat, "norm form")
    lam, V = np.linalg.eigh(mat)
    Tinv = (V / np.sqrt(lam)) @ V.conj().T
    ux = Tinv @ kernel_vector(x, c)
    uy = Tinv @ kernel_vector(y, c)
    return complex(np.vdot(ux, uy))


def gram_oracle_polar(w: AngularWeightSpec, N: int, n_t: int | None = None,
                      n_theta: int | None = None) -> np.ndarray:
    """``M[j, k] = int z^j conj(z)^k w dA`` by tensor quadrature in ``(|z|^2, theta)``.

    Independent of the moment machinery: scipy's Gauss-Jacobi in ``t = |z|^2``
    and the trapezoid rule in angle (exact for trigonometric polynomials of
    degree below ``n_theta``).
    """
    rad = w.radial
    R2 = rad.domain.R ** 2
    deg = 2 * N + 2 * max(max(a, b) for a, b in w.poly)
    n_t = n_t or deg // 2 + 40
    n_theta = n_theta or 2 * deg + 8
    x, wt = roots_jacobi(n_t, rad.alpha, 0.0)
    t = 0.5 * (x + 1.0) * R2
    wt = wt * (R2 / 2.0) ** (rad.alpha + 1)
    th = 2 * np.pi * np.arange(n_theta) / n_theta
    r = np.sqrt(t)
    z = r[:, None] * np.exp(1j * th[None, :])
    # dA = (1/2) dt dtheta; the (R^2 - t)^alpha factor sits in wt
    vals = rad.h(t)[:, None] * w.p(z)
    base = 0.5 * wt[:, None] * vals * (2 * np.pi / n_theta)
    k = np.arange(N)
    Z = z[..., None] ** k
    M = np.einsum("ab,abj,abk->jk", base, Z, np.conj(Z))
    return M / rad.domain.measure_scale


def gram_kernel(M: np.ndarray, y, x) -> complex:
    """``K(y, x) = sum_jk y^j (M^{-1})[k, j] conj(x^k)`` for the Gram matrix ``M``."""
    N = M.shape[0]
    k = np.arange(N)
    yj = complex(y) ** k
    xk = np.conj(complex(x) ** k)
    Minv = np.linalg.inv(M)
    return complex(yj @ Minv.T @ xk)


def section_convergence(w: AngularWeightSpec, x, y, Ns) -> tuple[np.ndarray, float]:
    """Differences between the ``N`` and ``2N`` kernel sections and the fitted rate ``q``.

    Returns ``(diffs, q)`` where ``diffs ~ C q^N``.
    """
    Ns = np.asarray(list(Ns), dtype=int)
    diffs = np.array([abs(weighted_kernel_via_inverse(w, x, N)(y)
                          - weighted_kernel_via_inverse(w, x, 2 * N)(y)) for N in Ns])
    good = diffs > 0
    if good.sum() < 2:
        return diffs, 0.0
    slope = np.polyfit(Ns[good], np.log(diffs[good]), 1)[0]
    return diffs, float(math.exp(slope))

"""Diagonal model of generalized Toeplitz operators.

An operator is an eigenvalue generator ``k -> lambda_k``.  Its order and
symbol are read off the asymptotics ``lambda_k ~ c0 k^m`` (the cone
variable ``xi`` is identified with ``k``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError, ModelMismatchError, NonEllipticError, ParameterError

DEFAULT_WINDOW = (64, 1 << 16)
LEVELS = 5
MISMATCH_TOL = 1e-4


@dataclass(frozen=True)
class DiagonalGTO:
    """Eigenvalue generator with an optional declared order and symbol."""

    generator: Callable[[np.ndarray], np.ndarray]
    order: float | None = None
    symbol: float | None = None
    name: str = ""

    def eigenvalues(self, k) -> np.ndarray:
        return np.asarray(self.generator(np.asarray(k, dtype=float)))

    @classmethod
    def power_law(cls, c0: float, m: float, correction: float = 0.0, name: str = "") -> "DiagonalGTO":
        """``lambda_k = c0 k^m (1 + correction/k)`` for ``k >= 1`` (``k = 0`` maps to ``k = 1``)."""
        def gen(k):
            kk = np.maximum(k, 1.0)
            return c0 * kk**m * (1.0 + correction / kk)
        return cls(gen, float(m), float(c0), name or f"{c0}k^{m}")

    @classmethod
    def from_spectral(cls, model) -> "DiagonalGTO":
        return cls(model.generator, model.order_hint, None, model.name)


@dataclass(frozen=True)
class OrderEstimate:
    order: float
    symbol: float
    diagnostics: dict = field(default_factory=dict)


def _richardson_limit(seq: np.ndarray) -> tuple[float, float]:
    # seq[j] at k = k_hi / 2^(L-1-j); corrections in powers of 1/k, step ratio 2
    T = np.asarray(seq, dtype=float)
    prev = T[-1]
    power = 1
    while len(T) > 1:
        f = 2.0**power
        T_new = (f * T[1:] - T[:-1]) / (f - 1)
        prev = T[-1]
        T = T_new
        power += 1
    return float(T[0]), float(abs(T[0] - prev))


def estimate_order_symbol(op: DiagonalGTO, k_window: tuple[int, int] = DEFAULT_WINDOW,
                          levels: int = LEVELS, tol: float = MISMATCH_TOL) -> OrderEstimate:
    """Order ``m`` and symbol ``c0`` of ``lambda_k ~ c0 k^m``.

    Local slopes on the dyadic points ``k_hi/2^j`` inside the window are
    extrapolated by Richardson (corrections in powers of ``1/k``); so is
    ``|lambda_k| k^{-m}``.  The returned symbol is real and carries the
    sign of the eigenvalues when they are real.

    Raises
    ------
    ModelMismatchError
        If the last two Richardson levels for the order differ by more
        than ``tol`` (behavior is not a power law on this window).
    """
    k_lo, k_hi = k_window
    if not 1 <= k_lo < k_hi:
        raise ParameterError("window must satisfy 1 <= k_lo < k_hi")
    L = min(levels, int(math.log2(k_hi / k_lo)))
    if L < 2:
        raise ParameterError("window too narrow for a dyadic estimate")
    ks = k_hi / 2.0 ** np.arange(L, -1, -1)
    lam = op.eigenvalues(ks)
    mod = np.abs(lam)
    if np.any(mod == 0):
        raise ModelMismatchError("zero eigenvalue inside the estimation window")
    if np.isrealobj(lam) or np.all(np.abs(np.imag(lam)) == 0):
        re = np.real(lam)
        if not (np.all(re > 0) or np.all(re < 0)):
            raise ModelMismatchError("eigenvalues change sign inside the window")
        sign = float(np.sign(re[0]))
    else:
        sign = 1.0
    slopes = np.diff(np.log(mod)) / math.log(2.0)
    order, gap = _richardson_limit(slopes)
    if gap > tol:
        raise ModelMismatchError(f"dyadic slopes do not settle: last levels differ by {gap:.3g}")
    scaled = mod[1:] * ks[1:] ** (-order)
    symbol, sgap = _richardson_limit(scaled)
    return OrderEstimate(order, sign * symbol,
                         {"slopes": slopes.tolist(), "order_gap": gap, "symbol_gap": sgap,
                          "k": ks.tolist()})


def compose(a: DiagonalGTO, b: DiagonalGTO) -> DiagonalGTO:
    """Pointwise product of eigenvalues; declared orders add and symbols multiply."""
    order = a.order + b.order if a.order is not None and b.order is not None else None
    symbol = a.symbol * b.symbol if a.symbol is not None and b.symbol is not None else None

    def gen(k, fa=a.generator, fb=b.generator):
        return fa(k) * fb(k)

    return DiagonalGTO(gen, order, symbol, f"({a.name})({b.name})")


def parametrix(op: DiagonalGTO, k_check: int = 4096) -> DiagonalGTO:
    """Exact inverse ``1/lambda_k`` in the diagonal model.

    Raises
    ------
    NonEllipticError
        If an eigenvalue vanishes for ``k < k_check``.
    """
    lam = op.eigenvalues(np.arange(k_check))
    if np.any(lam == 0):
        raise NonEllipticError(f"zero eigenvalue at k={int(np.flatnonzero(lam == 0)[0])}")

    def gen(k, f=op.generator):
        return 1.0 / f(k)

    order = -op.order if op.order is not None else None
    symbol = 1.0 / op.symbol if op.symbol else None
    return DiagonalGTO(gen, order, symbol, f"({op.name})^-1")


def leading_parametrix(order: float, symbol: float) -> DiagonalGTO:
    """Inverse of the principal part only: ``k^{-m} / c0``."""
    if symbol == 0:
        raise NonEllipticError("zero principal symbol")

    def gen(k):
        return np.maximum(k, 1.0) ** (-order) / symbol

    return DiagonalGTO(gen, -order, 1.0 / symbol, "leading parametrix")


def residual_slope(op: DiagonalGTO, approx_inverse: DiagonalGTO,
                   k_window: tuple[int, int] = (16, 1 << 14)) -> float:
    """Log-log slope of ``|lambda_k p_k - 1|`` by least squares on a geometric window."""
    k = np.unique(np.geomspace(*k_window, 64).round())
    r = np.abs(op.eigenvalues(k) * approx_inverse.eigenvalues(k) - 1.0)
    good = r > 0
    if good.sum() < 2:
        return -np.inf
    return float(np.polyfit(np.log(k[good]), np.log(r[good]), 1)[0])


def complex_power(op: DiagonalGTO, s: complex, k_check: int = 4096) -> DiagonalGTO:
    """``lambda_k^s`` on the principal branch; needs positive eigenvalues."""
    lam = op.eigenvalues(np.arange(k_check))
    if np.iscomplexobj(lam) and np.any(np.imag(lam) != 0) or np.any(np.real(lam) <= 0):
        raise DomainError("complex powers need positive eigenvalues")
    s = complex(s)

    def gen(k, f=op.generator):
        out = np.exp(s * np.log(np.asarray(f(k), dtype=float)))
        return out.real if s.imag == 0 else out

    order = op.order * s.real if op.order is not None else None
    symbol = abs(op.symbol ** s) if op.symbol is not None else None
    return DiagonalGTO(gen, order, symbol, f"({op.name})^{s}")

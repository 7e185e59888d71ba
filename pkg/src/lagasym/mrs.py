"""MRS number beta_n and the rescaled field V_n."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MrsUndefinedError, NumericalError
from .weight import RealPolynomial, WeightSpec, a_float


@dataclass(frozen=True)
class MrsResult:
    beta_n: float
    residual: float
    iterations: int


def _mrs_poly(spec: WeightSpec) -> np.ndarray:
    # coefficients of beta -> sum_k (1/2) k q_k A_k beta^k, ascending
    c = np.zeros(spec.m + 1)
    for k in range(1, spec.m + 1):
        c[k] = 0.5 * k * spec.q[k] * a_float(k)
    return c


def mrs_equation(spec: WeightSpec, beta: float) -> float:
    """Left-hand side of the MRS condition as a function of beta."""
    return float(np.polynomial.polynomial.polyval(beta, _mrs_poly(spec)))


def mrs_series_coeffs(spec: WeightSpec) -> tuple[float, float]:
    """Leading terms beta0, beta1 of beta_n = n^{1/m}(beta0 + beta1 n^{-1/m} + ...)."""
    m, q = spec.m, spec.q
    beta0 = (0.5 * m * q[m] * a_float(m)) ** (-1.0 / m)
    beta1 = -2.0 * (m - 1) * q[m - 1] / (m * (2 * m - 1) * q[m]) if m > 1 else 0.0
    return beta0, beta1


def _positive_roots(c: np.ndarray, n: float) -> int:
    shifted = c.copy()
    shifted[0] -= n
    roots = np.polynomial.polynomial.polyroots(shifted)
    scale = max(1.0, np.max(np.abs(roots)))
    real = roots[np.abs(roots.imag) <= 1e-9 * scale].real
    return int(np.sum(real > 0))


def mrs_beta(spec: WeightSpec, n: int, maxiter: int = 200) -> MrsResult:
    """Solve sum_k (1/2) k q_k A_k beta^k = n for the positive root beta_n."""
    if n < 1:
        raise MrsUndefinedError(f"n must be positive, got {n}")
    c = _mrs_poly(spec)
    dc = np.polynomial.polynomial.polyder(c)
    m = spec.m

    def F(b):
        return np.polynomial.polynomial.polyval(b, c) - n

    if m > 1 and any(v < 0 for v in spec.q[1:m]):
        if _positive_roots(c, n) != 1:
            raise MrsUndefinedError(f"MRS number not unique for n={n}")

    beta0, _ = mrs_series_coeffs(spec)
    guess = n ** (1.0 / m) * beta0
    lo, hi = guess / 4.0, 4.0 * guess
    # F(0) = -n < 0 and F -> +inf, so a bracket always exists
    for _ in range(200):
        if F(lo) < 0:
            break
        lo /= 4.0
    for _ in range(200):
        if F(hi) > 0:
            break
        hi *= 4.0
    if not (F(lo) < 0 < F(hi)):
        raise MrsUndefinedError(f"could not bracket the MRS number for n={n}")

    b = min(max(guess, lo), hi)
    for it in range(1, maxiter + 1):
        f = F(b)
        if f == 0:
            return MrsResult(float(b), 0.0, it)
        if f < 0:
            lo = b
        else:
            hi = b
        d = np.polynomial.polynomial.polyval(b, dc)
        step_ok = d > 0
        if step_ok:
            nb = b - f / d
            step_ok = lo <= nb <= hi
        if not step_ok:
            nb = 0.5 * (lo + hi)
        if abs(nb - b) <= 4 * np.finfo(float).eps * abs(nb) or hi - lo <= 4 * np.finfo(float).eps * hi:
            b = nb
            res = float(F(b))
            if abs(res) > 1e-12 * n:
                raise NumericalError(f"MRS residual {res:.3g} too large", "mrs.mrs_beta")
            return MrsResult(float(b), res, it)
        b = nb
    raise NumericalError(f"MRS solver did not converge in {maxiter} steps", "mrs.mrs_beta")


def rescaled_field(spec: WeightSpec, beta_n: float, n: int) -> RealPolynomial:
    """V_n(x) = Q(beta_n x)/n as a polynomial in x."""
    return RealPolynomial(tuple(qk * beta_n ** k / n for k, qk in enumerate(spec.q)))

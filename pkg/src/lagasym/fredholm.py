"""Hard-edge Fredholm determinant, smallest-eigenvalue law and Painleve cross-check."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as sp
from scipy.integrate import solve_ivp

from .errors import DomainError, NumericalError
from .kernels import bessel_kernel_hard

DEFAULT_ORDER = 40
MAX_ORDER = 200
TARGET_ERROR = 1e-10
FAIL_ERROR = 1e-8
S_MAX = 50.0
PAINLEVE_S0 = 1e-6
RULES = ("jacobi", "legendre")


@dataclass(frozen=True)
class DeterminantResult:
    s: float
    det: float
    quad_order: int
    est_error: float


def _nodes(alpha: float, s: float, order: int, rule: str):
    if rule == "jacobi":
        # weight x^alpha on (0, s); kernel divided by (uv)^(alpha/2) is smooth
        t, w = sp.roots_jacobi(order, 0.0, alpha)
        x = 0.5 * s * (t + 1.0)
        w = w * (0.5 * s) ** (alpha + 1.0)
        return x, w, x ** (-alpha / 2.0)
    t, w = sp.roots_legendre(order)
    return 0.5 * s * (t + 1.0), 0.5 * s * w, np.ones(order)


def _det_at(alpha: float, s: float, order: int, rule: str) -> float:
    x, w, f = _nodes(alpha, s, order, rule)
    K = bessel_kernel_hard(alpha, x[:, None], x[None, :]) * np.outer(f, f)
    sw = np.sqrt(w)
    M = np.eye(order) - sw[:, None] * K * sw[None, :]
    return float(np.linalg.det(M))


def fredholm_det_bessel(alpha: float, s: float, quad_order: int = DEFAULT_ORDER,
                        rule: str = "jacobi") -> DeterminantResult:
    """det(I - J_{alpha,s}) on L^2(0,s) by Nystrom with order doubling."""
    if not alpha > -1:
        raise DomainError("alpha must exceed -1")
    if not 0 < s <= S_MAX:
        raise DomainError(f"s must lie in (0, {S_MAX}]")
    if not 10 <= quad_order <= MAX_ORDER:
        raise DomainError(f"quad_order must lie in [10, {MAX_ORDER}]")
    if rule not in RULES:
        raise DomainError(f"rule must be one of {RULES}")
    q = quad_order
    d = _det_at(alpha, s, q, rule)
    while True:
        q2 = min(2 * q, MAX_ORDER)
        d2 = _det_at(alpha, s, q2, rule)
        err = abs(d2 - d)
        if err <= TARGET_ERROR or q2 == MAX_ORDER or q2 == q:
            break
        q, d = q2, d2
    if not np.isfinite(err) or err > FAIL_ERROR:
        raise NumericalError(f"determinant did not converge (est_error={err:.3g})", "fredholm.fredholm_det_bessel")
    return DeterminantResult(float(s), d2, q2, err)


def _painleve_rhs(t, y, alpha):
    q, w, i1, _ = y
    s = math.exp(t)
    num = q * w * w + 0.25 * (s - alpha * alpha) * q + 0.25 * s * q ** 3 * (q * q - 2.0)
    return [w, num / (q * q - 1.0), s * q * q, i1]


def painleve_F(alpha: float, s: float) -> float:
    """F_alpha(s) from the q-equation, integrated in log s with the quadratic weight q^2."""
    if not -1 < alpha <= 3:
        raise DomainError("alpha must lie in (-1, 3]")
    if not 0 < s <= 20:
        raise DomainError("s must lie in (0, 20]")
    if alpha == 0:
        # q = 1 solves the equation with the stated boundary value
        return math.exp(-s / 4.0)
    # the start-up error scales as s0^(1+alpha)
    s0 = min(PAINLEVE_S0, 10.0 ** (-13.0 / (1.0 + alpha)), s)
    c = 1.0 / (2.0 ** alpha * math.gamma(1.0 + alpha))
    d = -1.0 / (4.0 * (alpha + 1.0))
    a = alpha / 2.0
    q0 = c * s0 ** a * (1.0 + d * s0)
    w0 = c * s0 ** a * (a + (a + 1.0) * d * s0)
    # I1 = int_0^s q^2, I2 = int_0^s I1(y)/y dy, from the leading power law
    i1 = c * c * s0 ** (alpha + 1.0) / (alpha + 1.0)
    i2 = i1 / (alpha + 1.0)
    if s == s0:
        return math.exp(-i2 / 4.0)
    sol = solve_ivp(_painleve_rhs, (math.log(s0), math.log(s)), [q0, w0, i1, i2], args=(alpha,),
                    method="DOP853", rtol=1e-12, atol=1e-30)
    if not sol.success:
        reached = math.exp(sol.t[-1]) if sol.t.size else s0
        raise NumericalError(f"ODE integration failed at s={reached:.6g}: {sol.message}", "fredholm.painleve_F")
    y = sol.y[:, -1]
    if not np.all(np.isfinite(y)):
        raise NumericalError("ODE blow-up", "fredholm.painleve_F")
    return math.exp(-y[3] / 4.0)


def smallest_eig_cdf(alpha: float, s: float, **kw) -> float:
    """Limiting CDF of the scaled smallest eigenvalue: 1 - det(I - J_{alpha, s^2})."""
    if not s > 0:
        raise DomainError("s must be positive")
    return 1.0 - fredholm_det_bessel(alpha, s * s, **kw).det

"""Equilibrium measure on [0, 1] for the rescaled field V_n.

The density is (1/2pi) sqrt((1-x)/x) h_n(x).  The phase xi_n and the
constant ell_n follow in closed form from the coefficients of V_n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .branch import cacos, csqrt, resolve_side
from .errors import DomainError, NumericalError
from .mrs import MrsResult, mrs_beta, rescaled_field
from .weight import RealPolynomial, WeightSpec, a_float


@dataclass(frozen=True)
class EquilibriumData:
    spec: WeightSpec
    n: int
    beta_n: float
    v: RealPolynomial
    h: RealPolynomial
    H: RealPolynomial
    ell_n: float
    mrs: MrsResult | None = None

    @property
    def h0(self) -> float:
        return self.h(0.0)

    @property
    def h1(self) -> float:
        return self.h(1.0)

    @property
    def dh1(self) -> float:
        return self.h.derivative()(1.0)


def equilibrium_coeffs(v: RealPolynomial) -> tuple[RealPolynomial, RealPolynomial, float]:
    """h_n, H_n and ell_n from the coefficients of V_n."""
    vk = v.coeffs
    m = len(vk) - 1
    h = [sum(j * vk[j] * a_float(j - k - 1) for j in range(k + 1, m + 1)) for k in range(m)]
    H = [sum(vk[j] * a_float(j - k - 1) for j in range(k + 1, m + 1)) for k in range(m)]
    ell = -sum(vk[k] * a_float(k) for k in range(m + 1)) - 4.0 * math.log(2.0)
    return RealPolynomial(tuple(h)), RealPolynomial(tuple(H)), ell


def limit_h(m: int) -> RealPolynomial:
    """n-independent limit h with coefficients 2 A_{m-1-k}/A_m."""
    return RealPolynomial(tuple(2 * a_float(m - 1 - k) / a_float(m) for k in range(m)))


def mass_identity(h: RealPolynomial) -> float:
    """Closed-form integral of (1/2pi) sqrt((1-x)/x) h(x) over (0, 1)."""
    # (1/2pi) int_0^1 x^{k-1/2} (1-x)^{1/2} dx = A_k / (4(k+1))
    return sum(c * a_float(k) / (4.0 * (k + 1)) for k, c in enumerate(h.coeffs))


def h_positive(h: RealPolynomial, grid: int = 1000) -> bool:
    c = h.coeffs
    if c[0] > 0 and all(x >= 0 for x in c):
        return True
    x = np.linspace(0.0, 1.0, grid)
    return bool(np.all(h(x) > 0))


def build_equilibrium(spec: WeightSpec, n: int) -> EquilibriumData:
    res = mrs_beta(spec, n)
    v = rescaled_field(spec, res.beta_n, n)
    h, H, ell = equilibrium_coeffs(v)
    if not h_positive(h):
        raise NumericalError(
            f"h not positive on [0,1] for n={n}; n is below the regular range",
            "equilibrium.build_equilibrium",
        )
    return EquilibriumData(spec, n, res.beta_n, v, h, H, ell, res)


def density(eq: EquilibriumData, x: float) -> float:
    """Equilibrium density on (0, 1]."""
    if not (0.0 < x <= 1.0):
        raise DomainError(f"density defined on (0,1], got {x}")
    return math.sqrt((1.0 - x) / x) * eq.h(x) / (2.0 * math.pi)


def _phase_core(eq: EquilibriumData, z: complex, s: int | None) -> complex:
    # (1/2) H(z) z^{1/2} (1-z)^{1/2} - 2 arccos z^{1/2}; analytic off
    # (-inf,0] and [1,inf), cut sides taken from s
    r = csqrt(z, s)
    r1 = csqrt(1.0 - z, None if s is None else -s)
    return 0.5 * eq.H(z) * r * r1 - 2.0 * cacos(r, s)


def _side_for(z: complex, side: int | None, what: str) -> int:
    z = complex(z)
    s = resolve_side(z, side)
    if s is None:
        if z.imag == 0 and z.real > 1:
            return 1  # xi_n is continuous across (1, inf)
        if z == 1:
            return 1
        raise DomainError(f"{what}: z={z} lies on the cut (-inf,1]; pass side=+1 or -1")
    return s


def int_psi_from_1(eq: EquilibriumData, z: complex, side: int | None = None) -> complex:
    """Integral of psi_n from 1 to z, psi_n = h_n (z-1)^{1/2} / (2 pi i z^{1/2})."""
    s = _side_for(z, side, "int_psi_from_1")
    val = _phase_core(eq, complex(z), s) / math.pi
    return val if s > 0 else -val


def xi_n(eq: EquilibriumData, z: complex, side: int | None = None) -> complex:
    """xi_n(z) = -pi i * integral of psi_n from 1 to z."""
    s = _side_for(z, side, "xi_n")
    val = -1j * _phase_core(eq, complex(z), s)
    return val if s > 0 else -val

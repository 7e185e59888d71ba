"""Large-n formulas for recurrence coefficients, leading coefficients and p_n.

Values that may overflow are returned as ``value * exp(log_scale)``.
``neglected_scale`` and ``envelope`` are in the same scaled units as
``value``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .branch import cacos, cpow, clog, csqrt
from .conformal import (
    Region,
    RegionTag,
    c_hard,
    c_soft,
    classify_region,
    f_n,
    f_tilde_n,
    phi_hat,
    phi_map,
    phi_tilde_hat,
)
from .equilibrium import EquilibriumData, int_psi_from_1, xi_n
from .errors import DomainError
from .specfun import airy, airy_bi, bessel_j, bessel_y
from .weight import WeightSpec

# constants of the heuristic neglected-term estimates K/n (see README)
K_OUTER = 1.0
K_BULK = 1.0
K_AIRY = 1.0
K_BESSEL = 1.0
AIRY_CORR = 7.0 / 72.0


@dataclass(frozen=True)
class AsymptoticValue:
    value: complex
    neglected_scale: float
    log_scale: float = 0.0
    envelope: float | None = None

    @property
    def log_value(self) -> complex:
        """Principal log of the represented number value * exp(log_scale)."""
        return cmath.log(self.value) + self.log_scale

    def full(self) -> complex:
        """value * exp(log_scale); raises OverflowError if not representable."""
        return self.value * math.exp(self.log_scale)

    def conjugate(self) -> "AsymptoticValue":
        return AsymptoticValue(self.value.conjugate(), self.neglected_scale, self.log_scale, self.envelope)


def recurrence_asym(eq: EquilibriumData, n: int | None = None):
    """(a_n, b_{n-1}) to order 1/n."""
    n = eq.n if n is None else n
    al = eq.spec.alpha
    beta, h1 = eq.beta_n, eq.h1
    err = beta / n ** 2
    a = beta * (0.5 + (al + 1.0) / (h1 * n))
    b = beta * (0.25 + al / (2.0 * h1 * n))
    return AsymptoticValue(complex(a), err), AsymptoticValue(complex(b), err)


def gamma_correction(alpha: float, h0: float, h1: float, dh1: float) -> float:
    """Coefficient c of the factor 1 - c/n in the leading-coefficient formula."""
    return (
        (4 * alpha ** 2 - 1) / (8 * h0)
        + (12 * alpha ** 2 + 24 * alpha + 11) / (24 * h1)
        - dh1 / (8 * h1 ** 2)
    )


def gamma_asym(spec: WeightSpec, eq: EquilibriumData, n: int | None = None) -> AsymptoticValue:
    """gamma_n = value * exp(log_scale), with the printed 1/n correction in value."""
    n = eq.n if n is None else n
    al = spec.alpha
    lead = (
        -(n + al / 2 + 0.5) * math.log(eq.beta_n)
        - 0.5 * n * eq.ell_n
        + 0.5 * math.log(2 / math.pi)
        + al * math.log(2.0)
    )
    corr = 1.0 - gamma_correction(al, eq.h0, eq.h1, eq.dh1) / n
    return AsymptoticValue(complex(corr), abs(corr) / n ** 2, lead)


# ---------------------------------------------------------------------------
# Plancherel-Rotach formulas


def in_region(z: complex, region: Region, delta: float) -> bool:
    """Membership in the closed region X_delta of the upper half-plane."""
    z = complex(z)
    if region is Region.D_bessel:
        return abs(z) <= delta
    if region is Region.C_airy:
        return abs(z - 1) <= delta
    if region is Region.B_bulk:
        return delta <= z.real <= 1 - delta and 0 <= z.imag <= delta
    inner_b = delta < z.real < 1 - delta and z.imag < delta
    return abs(z) >= delta and abs(z - 1) >= delta and not inner_b


def _region(z, region, delta) -> Region:
    if region is None or region == "auto":
        return classify_region(z, delta).region
    if isinstance(region, RegionTag):
        return region.region
    if isinstance(region, Region):
        return region
    try:
        return Region(str(region))
    except ValueError:
        raise DomainError(f"unknown region {region!r}") from None


def _log_prefactor(eq: EquilibriumData, z: complex) -> complex:
    # log of (beta_n z)^{-alpha/2} exp(Q(beta_n z)/2), upper-side limits
    bz = eq.beta_n * z
    return -0.5 * eq.spec.alpha * clog(bz, 1) + 0.5 * eq.spec.Q(bz)


def _airy_mod(f):
    ai, bi = airy(f), airy_bi(f)
    if f.real <= 0:
        return math.hypot(abs(ai.value), abs(bi.value)), math.hypot(abs(ai.derivative), abs(bi.derivative))
    return abs(ai.value), abs(ai.derivative)


def _bessel_mod(al, w):
    j = bessel_j(al, w)
    if abs(w) >= 1:
        y = bessel_y(al, w)
        return math.hypot(abs(j.value), abs(y.value)), math.hypot(abs(j.derivative), abs(y.derivative))
    return abs(j.value) + abs(j.derivative), abs(j.value) + abs(j.derivative)


def _outer(eq, n, z):
    al, beta = eq.spec.alpha, eq.beta_n
    lp = _log_prefactor(eq, z) + n * xi_n(eq, z, 1)
    ph = phi_map(z, 1)
    rest = (
        math.sqrt(2 / (math.pi * beta))
        * cpow(ph, (al + 1) / 2, 1)
        / (2 * cpow(z, 0.25, 1) * cpow(z - 1, 0.25, 1))
    )
    val = rest * cmath.exp(1j * lp.imag)
    env = abs(val)
    return AsymptoticValue(val, env * K_OUTER / n, lp.real, env)


def _bulk(eq, n, z):
    al, beta = eq.spec.alpha, eq.beta_n
    lp = _log_prefactor(eq, z)
    amp = math.sqrt(2 / (math.pi * beta)) / (cpow(z, 0.25, 1) * cpow(1 - z, 0.25, -1))
    eta1 = 0.5 * (al + 1) * cacos(2 * z - 1, 1)
    arg = eta1 - math.pi * n * int_psi_from_1(eq, z, 1) - math.pi / 4
    val = amp * cmath.cos(arg) * cmath.exp(1j * lp.imag)
    env = abs(amp) * math.cosh(arg.imag)
    # the Airy and Bessel corrections grow near the edges like 1/(n|xi_n|)
    # and 1/(n|xi_n - pi i|)
    xi = xi_n(eq, z, 1)
    k0 = abs(4 * al ** 2 - 1) / 8 + 0.5
    edge = AIRY_CORR / max(abs(xi), 1e-300) + k0 / abs(xi - math.pi * 1j)
    return AsymptoticValue(val, env * (K_BULK + edge) / n, lp.real, env)


def _sin_over_sqrt(al, z):
    # sin(eta_1)/(z-1)^{1/2}, finite at z = 1
    if z == 1:
        return -1j * (al + 1)
    eta1 = 0.5 * (al + 1) * cacos(2 * z - 1, 1)
    return cmath.sin(eta1) / csqrt(z - 1, 1)


def _airy_region(eq, n, z):
    al, beta = eq.spec.alpha, eq.beta_n
    lp = _log_prefactor(eq, z)
    f = f_n(eq, n, z)
    g = c_soft(eq) * n ** (2 / 3) * cpow(phi_hat(eq, z), 2 / 3)
    eta1 = 0.5 * (al + 1) * cacos(2 * z - 1, 1)
    A = airy(f)
    t1 = cmath.cos(eta1) * cpow(g, 0.25) * A.value
    s = _sin_over_sqrt(al, z)
    t2 = -1j * s * cpow(g, -0.25) * A.derivative
    amp = math.sqrt(2 / beta) / cpow(z, 0.25, 1)
    val = amp * (t1 + t2) * cmath.exp(1j * lp.imag)
    m0, m1 = _airy_mod(f)
    env = abs(amp) * (abs(cmath.cos(eta1)) * abs(g) ** 0.25 * m0 + abs(s) * abs(g) ** -0.25 * m1)
    return AsymptoticValue(val, env * K_AIRY / n, lp.real, env)


def _bessel_region(eq, n, z):
    al, beta = eq.spec.alpha, eq.beta_n
    if z == 0:
        raise DomainError("the hard-edge formula is not evaluated at z = 0")
    lp = _log_prefactor(eq, z)
    ft = f_tilde_n(eq, n, z)
    w = 2 * csqrt(-ft, 1)
    # (-f~)^{1/4}/z^{1/4} = (c~ n^2)^{1/4} phi_tilde_hat^{1/2}
    ratio = (c_hard(eq) * n ** 2) ** 0.25 * csqrt(phi_tilde_hat(eq, z))
    zeta1 = 0.5 * (al + 1) * cacos(2 * z - 1, 1) - math.pi * al / 2
    J = bessel_j(al, w)
    bracket = cmath.sin(zeta1) * J.value + cmath.cos(zeta1) * J.derivative
    amp = (-1) ** n * math.sqrt(2 / beta) * ratio / cpow(1 - z, 0.25, -1)
    val = amp * bracket * cmath.exp(1j * lp.imag)
    m0, m1 = _bessel_mod(al, w)
    env = abs(amp) * (abs(cmath.sin(zeta1)) * m0 + abs(cmath.cos(zeta1)) * m1)
    return AsymptoticValue(val, env * K_BESSEL / n, lp.real, env)


_FORMULAS = {
    Region.A_outer: _outer,
    Region.B_bulk: _bulk,
    Region.C_airy: _airy_region,
    Region.D_bessel: _bessel_region,
}


def pn_asym(spec: WeightSpec, eq: EquilibriumData, n: int | None, z: complex,
            region=None, delta: float = 0.1) -> AsymptoticValue:
    """Leading-order formula for p_n(beta_n z) in the requested region."""
    n = eq.n if n is None else n
    if spec != eq.spec:
        raise DomainError("spec does not match the equilibrium data")
    z = complex(z)
    lower = z.imag < 0
    zu = z.conjugate() if lower else z
    reg = _region(zu, region, delta)
    if not in_region(zu, reg, delta):
        raise DomainError(f"z={z} is not in region {reg.value} for delta={delta}")
    out = _FORMULAS[reg](eq, n, zu)
    return out.conjugate() if lower else out

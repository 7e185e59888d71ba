"""Conformal map phi, Szego function D, edge maps f_n and f~_n, regions."""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import binom

from .branch import cpow, csqrt, resolve_side
from .equilibrium import EquilibriumData, xi_n
from .errors import DomainError

SERIES_RADIUS = 0.5


def _on_segment(z: complex) -> bool:
    return z.imag == 0 and 0.0 < z.real < 1.0


def phi_map(z: complex, side: int | None = None) -> complex:
    """phi(z) = 2(z - 1/2) + 2 z^{1/2} (z-1)^{1/2}, exterior map of [0,1]."""
    z = complex(z)
    s = resolve_side(z, side)
    if _on_segment(z) and s is None:
        raise DomainError("phi_map: point on [0,1] needs a side flag")
    # z^{1/2}(z-1)^{1/2} is continuous across (-inf, 0); any side works there
    s = s if s is not None else 1
    return 2.0 * (z - 0.5) + 2.0 * csqrt(z, s) * csqrt(z - 1.0, s)


def szego_D(alpha: float, z: complex, side: int | None = None) -> complex:
    """D(z) = z^{alpha/2} / phi(z)^{alpha/2}."""
    z = complex(z)
    s = resolve_side(z, side)
    if _on_segment(z) and s is None:
        raise DomainError("szego_D: point on [0,1] needs a side flag")
    s = s if s is not None else 1
    ph = phi_map(z, s)
    # on (-inf,0) phi is negative with Im phi of the same sign as Im z
    return cpow(z, alpha / 2.0, s) / cpow(ph, alpha / 2.0, s)


def _taylor_sqrt_factor(h_coeffs, center: float, power_sign: int, nterms: int) -> np.ndarray:
    """Taylor coefficients of h(s) * s^{-1/2} about 1 (center=1) or
    h(s) * (1-s)^{1/2} about 0 (center=0)."""
    m = len(h_coeffs)
    if center == 1.0:
        # h(1+t) as a polynomial in t
        ht = np.zeros(m)
        for j, c in enumerate(h_coeffs):
            for i in range(j + 1):
                ht[i] += c * math.comb(j, i)
        bt = np.array([binom(-0.5, k) for k in range(nterms)])
    else:
        ht = np.array(h_coeffs, dtype=float)
        bt = np.array([binom(0.5, k) * (-1.0) ** k for k in range(nterms)])
    out = np.convolve(ht, bt)[:nterms]
    return out


@dataclass(frozen=True)
class _EdgeSeries:
    coeffs: np.ndarray

    def __call__(self, t: complex) -> complex:
        acc = 0j
        for c in self.coeffs[::-1]:
            acc = acc * t + c
        return acc


def _nterms(radius: float) -> int:
    return int(math.ceil(math.log(1e-18) / math.log(radius))) + 8


def phi_hat(eq: EquilibriumData, z: complex) -> complex:
    """Analytic factor with f_n = c_n n^{2/3} (z-1) phi_hat^{2/3}; equals 1 at z=1."""
    z = complex(z)
    t = z - 1.0
    if abs(t) <= SERIES_RADIUS:
        N = _nterms(SERIES_RADIUS)
        g = _taylor_sqrt_factor(eq.h.coeffs, 1.0, -1, N)
        c = np.array([g[k] / (k + 1.5) for k in range(N)])
        return 1.5 / eq.h1 * _EdgeSeries(c)(t)
    if z.imag == 0 and z.real <= 0:
        raise DomainError("phi_hat: cut along (-inf, 0]")
    s = 1 if z.imag >= 0 else -1
    return (2.0 / eq.h1) * (-1.5 * xi_n(eq, z, s)) / cpow(t, 1.5, s)


def phi_tilde_hat(eq: EquilibriumData, z: complex) -> complex:
    """Analytic factor with f~_n = -c~_n n^2 z phi_tilde_hat^2; equals 1 at z=0."""
    z = complex(z)
    if abs(z) <= SERIES_RADIUS:
        N = _nterms(SERIES_RADIUS)
        k = _taylor_sqrt_factor(eq.h.coeffs, 0.0, 1, N)
        c = np.array([k[j] / (j + 0.5) for j in range(N)])
        return 0.5 / eq.h0 * _EdgeSeries(c)(z)
    if z.imag == 0 and z.real >= 1:
        raise DomainError("phi_tilde_hat: cut along [1, inf)")
    s = 1 if z.imag >= 0 else -1
    return (xi_n(eq, z, s) - s * math.pi * 1j) / (eq.h0 * cpow(-z, 0.5, -s))


def c_soft(eq: EquilibriumData) -> float:
    return (0.5 * eq.h1) ** (2.0 / 3.0)


def c_hard(eq: EquilibriumData) -> float:
    return (0.5 * eq.h0) ** 2


def f_n(eq: EquilibriumData, n: int | None, z: complex, delta: float = SERIES_RADIUS) -> complex:
    """Soft-edge map with (2/3) f_n^{3/2} = -n xi_n."""
    n = eq.n if n is None else n
    z = complex(z)
    if abs(z - 1.0) >= delta:
        raise DomainError(f"f_n: |z-1| must be below {delta}")
    fh = cpow(phi_hat(eq, z), 2.0 / 3.0)
    return c_soft(eq) * n ** (2.0 / 3.0) * (z - 1.0) * fh


def f_tilde_n(eq: EquilibriumData, n: int | None, z: complex, delta: float = SERIES_RADIUS) -> complex:
    """Hard-edge map with 2 f~_n^{1/2} = -pi i n * integral of psi_n from 0 to z."""
    n = eq.n if n is None else n
    z = complex(z)
    if abs(z) >= delta:
        raise DomainError(f"f_tilde_n: |z| must be below {delta}")
    return -c_hard(eq) * n ** 2 * z * phi_tilde_hat(eq, z) ** 2


class Region(enum.Enum):
    A_outer = "A"
    B_bulk = "B"
    C_airy = "C"
    D_bessel = "D"


@dataclass(frozen=True)
class RegionTag:
    region: Region
    delta: float


def classify_region(z: complex, delta: float = 0.1) -> RegionTag:
    z = complex(z)
    if not (0.0 < delta < 0.5):
        raise DomainError("delta must lie in (0, 1/2)")
    if z.imag < 0:
        raise DomainError("classify_region works in the closed upper half-plane")
    if abs(z - 1.0) <= delta:
        return RegionTag(Region.C_airy, delta)
    if abs(z) <= delta:
        return RegionTag(Region.D_bessel, delta)
    if delta < z.real < 1.0 - delta and z.imag <= delta:
        return RegionTag(Region.B_bulk, delta)
    return RegionTag(Region.A_outer, delta)

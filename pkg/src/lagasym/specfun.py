"""Airy, Bessel and Hankel functions with derivatives, plus Gamma.

Thin wrappers over ``scipy.special`` (AMOS-backed for complex
arguments) that add domain checks and refuse to return silent
overflow.  Scalars and numpy arrays are both accepted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as sp

from .errors import DomainError, NumericalError

MAX_ABS_ARG = 1.0e4


@dataclass(frozen=True)
class FunPair:
    value: complex
    derivative: complex


def _arg(z, name, real_ok=True):
    # real inputs go through the real-valued scipy path
    z = np.asarray(z)
    if np.any(np.abs(z) > MAX_ABS_ARG) or np.any(~np.isfinite(z)):
        raise DomainError(f"{name}: |z| must be finite and at most {MAX_ABS_ARG:g}")
    if np.iscomplexobj(z):
        if np.all(z.imag == 0) and real_ok(z.real):
            return z.real.astype(float)
        return z.astype(complex)
    z = z.astype(float)
    return z if real_ok(z) else z.astype(complex)


def _any_real(x):
    return True


def _nonneg(x):
    return bool(np.all(x >= 0))


def _out(x):
    return complex(x) if np.ndim(x) == 0 else np.asarray(x, dtype=complex)


def _finite(name, *vals):
    for v in vals:
        if not np.all(np.isfinite(v)):
            raise NumericalError(f"{name}: result not representable", f"specfun.{name}")


def airy(z) -> FunPair:
    """Ai(z) and Ai'(z)."""
    w = _arg(z, "airy", _any_real)
    ai, aip, _, _ = sp.airy(w)
    _finite("airy", ai, aip)
    return FunPair(_out(ai), _out(aip))


def airy_bi(z) -> FunPair:
    """Bi(z) and Bi'(z)."""
    w = _arg(z, "airy_bi", _any_real)
    _, _, bi, bip = sp.airy(w)
    _finite("airy_bi", bi, bip)
    return FunPair(_out(bi), _out(bip))


def bessel_j(alpha: float, z) -> FunPair:
    """J_alpha(z) and its z-derivative, principal branch of z**alpha."""
    if not alpha > -1:
        raise DomainError("bessel_j requires alpha > -1")
    w = _arg(z, "bessel_j", _nonneg if alpha != int(alpha) else _any_real)
    if np.any(w == 0) and alpha != 0 and alpha < 1 and alpha != int(alpha):
        raise DomainError("bessel_j: derivative singular at z=0 for this alpha")
    j = sp.jv(alpha, w)
    dj = sp.jvp(alpha, w)
    _finite("bessel_j", j, dj)
    return FunPair(_out(j), _out(dj))


def bessel_y(alpha: float, z) -> FunPair:
    """Y_alpha(z) and its derivative; z must be nonzero."""
    w = _arg(z, "bessel_y", _nonneg)
    if np.any(w == 0):
        raise DomainError("bessel_y is singular at z=0")
    y = sp.yv(alpha, w)
    dy = sp.yvp(alpha, w)
    _finite("bessel_y", y, dy)
    return FunPair(_out(y), _out(dy))


def hankel(alpha: float, z, kind: int) -> FunPair:
    """H^(1)_alpha = J + iY or H^(2)_alpha = J - iY with derivative."""
    w = _arg(z, "hankel", lambda x: False)
    if np.any(w == 0):
        raise DomainError("hankel is singular at z=0")
    if kind == 1:
        h, dh = sp.hankel1(alpha, w), sp.h1vp(alpha, w)
    elif kind == 2:
        h, dh = sp.hankel2(alpha, w), sp.h2vp(alpha, w)
    else:
        raise DomainError(f"hankel kind must be 1 or 2, got {kind}")
    _finite("hankel", h, dh)
    return FunPair(_out(h), _out(dh))


def gamma_fn(x: float) -> float:
    if not x > 0:
        raise DomainError("gamma_fn requires x > 0")
    try:
        return math.gamma(x)
    except OverflowError:
        raise NumericalError(f"gamma overflows at x={x}", "specfun.gamma_fn") from None

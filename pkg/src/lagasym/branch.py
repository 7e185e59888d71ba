"""Principal-branch elementary functions with explicit cut sides.

Points lying exactly on a branch cut are evaluated as limits from the
upper (side=+1) or lower (side=-1) half-plane.  Points off the cut
ignore ``side``.  A point on a cut with ``side=None`` is an error.
"""

from __future__ import annotations

import cmath
import math

from .errors import DomainError


def resolve_side(z: complex, side: int | None) -> int | None:
    """Half-plane of z, falling back to ``side`` on the real axis."""
    im = complex(z).imag
    if im > 0:
        return 1
    if im < 0:
        return -1
    if side not in (None, 1, -1):
        raise DomainError(f"side must be +1, -1 or None, got {side!r}")
    return side


def _need(side, what):
    if side is None:
        raise DomainError(f"{what}: point on branch cut needs a side flag")
    return side


def csqrt(z: complex, side: int | None = None) -> complex:
    z = complex(z)
    if z.imag == 0 and z.real < 0:
        s = _need(side, "sqrt")
        return complex(0.0, s * math.sqrt(-z.real))
    return cmath.sqrt(z)


def cpow(z: complex, p: float, side: int | None = None) -> complex:
    """Principal z**p with cut along the negative real axis."""
    z = complex(z)
    if z == 0:
        if p > 0:
            return 0j
        if p == 0:
            return 1 + 0j
        raise DomainError("zero raised to a negative power")
    if z.imag == 0 and z.real < 0:
        s = _need(side, "pow")
        return (-z.real) ** p * cmath.exp(1j * s * math.pi * p)
    return cmath.exp(p * cmath.log(z))


def clog(z: complex, side: int | None = None) -> complex:
    z = complex(z)
    if z.imag == 0 and z.real < 0:
        s = _need(side, "log")
        return complex(math.log(-z.real), s * math.pi)
    return cmath.log(z)


def cacos(w: complex, side: int | None = None) -> complex:
    """arccos analytic off (-inf,-1] and [1,inf), arccos(0) = pi/2."""
    w = complex(w)
    if w.imag == 0 and abs(w.real) > 1:
        s = _need(side, "arccos")
        t = math.acosh(abs(w.real))
        if w.real > 1:
            return complex(0.0, -s * t)
        return complex(math.pi, -s * t)
    return cmath.acos(w)

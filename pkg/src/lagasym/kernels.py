"""Limiting kernels and the finite-n comparison harness."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from mpmath import mp, mpf
from scipy import special as sp

from .branch import cpow, csqrt
from .conformal import c_hard, c_soft
from .equilibrium import EquilibriumData, build_equilibrium, density
from .errors import DomainError
from .oracle import EVAL_DPS, OracleTable, log_weight_mp, pn_all, w_kernels_mp
from .specfun import bessel_j, hankel

AIRY_SERIES_TOL = 1e-3
BESSEL_SERIES_TOL = 1e-3


def sine_kernel(u: float, v: float) -> float:
    d = u - v
    if abs(d) < 1e-6:
        # sin(pi d)/(pi d) = 1 - (pi d)^2/6 + ...
        x = (math.pi * d) ** 2
        return 1.0 - x / 6.0 + x * x / 120.0
    return math.sin(math.pi * d) / (math.pi * d)


def airy_kernel(u: float, v: float) -> float:
    h = u - v
    if abs(h) < AIRY_SERIES_TOL:
        # symmetric expansion about the midpoint, using Ai'' = x Ai
        m = 0.5 * (u + v)
        a, b, _, _ = sp.airy(m)
        h2 = h * h
        c2 = -a * a * m * m / 6 + a * b / 12 + b * b * m / 6
        c4 = -a * a * m ** 3 / 120 + a * a / 320 + a * b * m / 240 + b * b * m * m / 120
        return float(b * b - m * a * a + h2 * (c2 + h2 * c4))
    au, apu, _, _ = sp.airy(u)
    av, apv, _, _ = sp.airy(v)
    return float((au * apv - av * apu) / (u - v))


def bessel_kernel_hard(alpha: float, u, v):
    """Hard-edge Bessel kernel; accepts scalars or broadcastable arrays."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if np.any(u <= 0) or np.any(v <= 0):
        raise DomainError("bessel_kernel_hard needs u, v > 0")
    su, sv = np.sqrt(u), np.sqrt(v)
    ju, jpu = sp.jv(alpha, su), sp.jvp(alpha, su)
    jv, jpv = sp.jv(alpha, sv), sp.jvp(alpha, sv)
    d = u - v
    near = np.abs(d) < BESSEL_SERIES_TOL * np.maximum(u, v)
    safe = np.where(near, 1.0, d)
    off = (ju * sv * jpv - jv * su * jpu) / (2.0 * safe)
    out = np.where(near, _bessel_kernel_near(alpha, 0.5 * (u + v), d), off)
    return float(out) if out.ndim == 0 else out


def _bessel_kernel_near(alpha, m, h):
    # expansion about the midpoint m in h = u - v, with p = phi(m), q = phi'(m) for phi(x) = J_alpha(sqrt x)
    sm = np.sqrt(m)
    p = sp.jv(alpha, sm)
    q = sp.jvp(alpha, sm) / (2.0 * sm)
    a2 = alpha * alpha
    pp, pq, qq = p * p, p * q, q * q
    c0 = ((m - a2) * pp + 4 * m * m * qq) / (4 * m)
    c2 = -(a2 * a2 * pp - 4 * a2 * m * m * qq - 2 * a2 * m * pp + 2 * a2 * pp + 4 * m ** 3 * qq
           + m * m * pp + 2 * m * m * pq - 8 * m * m * qq) / (96 * m ** 3)
    c4 = (-2 * a2 ** 3 * pp + 8 * a2 * a2 * m * m * qq + 6 * a2 * a2 * m * pp - 40 * a2 * a2 * pp
          - 16 * a2 * m ** 3 * qq - 6 * a2 * m * m * pp - 4 * a2 * m * m * pq + 160 * a2 * m * m * qq
          + 61 * a2 * m * pp - 48 * a2 * pp + 8 * m ** 4 * qq + 2 * m ** 3 * pp + 4 * m ** 3 * pq
          - 76 * m ** 3 * qq - 18 * m * m * pp - 24 * m * m * pq + 192 * m * m * qq) / (15360 * m ** 5)
    h2 = h * h
    return c0 + h2 * (c2 + h2 * c4)


TABLE1_ROWS = ("I", "II+", "II-", "III+", "III-", "III+-")


def _half(z, which):
    z = complex(z)
    return z.imag > 0 if which == "+" else z.imag < 0


def table1_kernels(alpha: float, u: complex, v: complex, which: str) -> complex:
    """Limiting hard-edge kernels for the W_I, W_II, W_III families."""
    u, v = complex(u), complex(v)
    if u == v:
        raise DomainError("table1_kernels undefined at u = v")
    if which not in TABLE1_ROWS:
        raise DomainError(f"unknown row {which!r}")
    checks = {
        "II+": [(u, "+")],
        "II-": [(u, "-")],
        "III+": [(u, "+"), (v, "+")],
        "III-": [(u, "-"), (v, "-")],
        "III+-": [(u, "+"), (v, "-")],
    }.get(which, [])
    for z, s in checks:
        if not _half(z, s):
            raise DomainError(f"row {which} needs the argument {z} in C{s}")
    return _table1_raw(alpha, u, v, which)


def _table1_raw(alpha: float, u: complex, v: complex, which: str) -> complex:
    # formulas without the half-plane checks
    su, sv = csqrt(u), csqrt(v)
    a2 = alpha / 2.0

    def J(z):
        f = bessel_j(alpha, z)
        return f.value, f.derivative

    def H(z, k):
        f = hankel(alpha, z, k)
        return f.value, f.derivative

    if which == "I":
        Ju, dJu = J(su)
        Jv, dJv = J(sv)
        return cpow(u, -a2) * cpow(v, -a2) * (Ju * sv * dJv - Jv * su * dJu) / (2 * (u - v))
    if which in ("II+", "II-"):
        k = 1 if which == "II+" else 2
        sign = 1 if k == 1 else -1
        Hu, dHu = H(su, k)
        Jv, dJv = J(sv)
        return sign * cpow(u, a2) * cpow(v, -a2) * (Hu * sv * dJv - Jv * su * dHu) / (4 * (u - v))
    if which in ("III+", "III-"):
        k = 1 if which == "III+" else 2
        Hu, dHu = H(su, k)
        Hv, dHv = H(sv, k)
        return cpow(u, a2) * cpow(v, a2) * (Hu * sv * dHv - Hv * su * dHu) / (8 * (u - v))
    Hu1, dHu1 = H(su, 1)
    Hv2, dHv2 = H(sv, 2)
    return -cpow(u, a2) * cpow(v, a2) * (Hu1 * sv * dHv2 - Hv2 * su * dHu1) / (8 * (u - v))


# ---------------------------------------------------------------------------
# finite-n comparisons

REGIMES = ("bulk", "soft", "hard", "w_I", "w_II", "w_III")

DEFAULT_GRIDS = {
    "bulk": tuple(np.linspace(-2.0, 2.0, 9)),
    "soft": tuple(np.linspace(-4.0, 2.0, 13)),
    "hard": (0.5,) + tuple(np.linspace(2.0, 20.0, 10)),
    "w_I": tuple(np.linspace(1.0, 10.0, 10)),
}

# complex test pairs (u, v, Table-1 row) for the W_II and W_III limits
W_PAIRS = {
    "w_II": ((1 + 1j, 3.0, "II+"), (2 + 0.5j, -1 + 1j, "II+"), (1 - 1j, 3.0, "II-"), (2 - 0.5j, 4 + 1j, "II-")),
    "w_III": ((1 + 1j, 3 + 2j, "III+"), (1 - 1j, 3 - 2j, "III-"), (1 + 1j, 3 - 2j, "III+-"), (2 + 1j, 1 - 0.5j, "III+-")),
}


@dataclass
class KernelComparison:
    regime: str
    n_list: list
    sup_error: list
    fitted_order: float
    residual: float
    grids: dict = field(default_factory=dict, repr=False)


def fit_order(n_list, errors) -> tuple[float, float]:
    """Least-squares slope of log(error) against log(n) and the RMS residual."""
    x = np.log(np.asarray(n_list, dtype=float))
    with np.errstate(divide="ignore"):
        y = np.log(np.asarray(errors, dtype=float))
    A = np.vstack([x, np.ones_like(x)]).T
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    res = y - A @ coef
    return float(coef[0]), float(np.sqrt(np.mean(res ** 2)))


def scaled_kernel_matrix(table: OracleTable, n: int, xs, scale) -> np.ndarray:
    """scale * K_n(x_i, x_j) for the points xs (all > 0)."""
    xs = [mpf(x) for x in xs]
    with mp.workdps(EVAL_DPS):
        P = [pn_all(table, n, x) for x in xs]
        sw = [mp.exp(log_weight_mp(table.spec, x) / 2) for x in xs]
        ratio = table.gamma[n - 1] / table.gamma[n]
        N = len(xs)
        out = np.empty((N, N))
        for i in range(N):
            for j in range(i, N):
                if abs(xs[i] - xs[j]) < mpf("1e-8") * max(1, abs(xs[i])):
                    k = mp.fsum(P[i][l] * P[j][l] for l in range(n))
                else:
                    k = ratio * (P[i][n] * P[j][n - 1] - P[i][n - 1] * P[j][n]) / (xs[i] - xs[j])
                out[i, j] = out[j, i] = float(k * sw[i] * sw[j] * scale)
        return out


def _grid_compare(table, n, regime, grid, x0):
    eq = build_equilibrium(table.spec, n)
    g = np.asarray(grid, dtype=float)
    al = table.spec.alpha
    b = eq.beta_n
    if regime == "bulk":
        d = n * density(eq, x0)
        pts = [b * (x0 + u / d) for u in g]
        K = scaled_kernel_matrix(table, n, pts, b / d)
        L = np.array([[sine_kernel(u, v) for v in g] for u in g])
        return np.abs(K - L), K, L
    if regime == "soft":
        c = c_soft(eq) * n ** (2.0 / 3.0)
        pts = [b * (1 + u / c) for u in g]
        K = scaled_kernel_matrix(table, n, pts, b / c)
        L = np.array([[airy_kernel(u, v) for v in g] for u in g])
        return np.abs(K - L), K, L
    if regime == "hard":
        s = b / (4 * c_hard(eq) * n ** 2)
        pts = [s * u for u in g]
        K = scaled_kernel_matrix(table, n, pts, s)
        U, V = np.meshgrid(g, g, indexing="ij")
        L = bessel_kernel_hard(al, U, V)
        return np.abs(K - L) / (U * V) ** (al / 2), K, L
    raise DomainError(f"unknown regime {regime!r}")


def hard_edge_scale(eq: EquilibriumData) -> float:
    """Argument map factor beta_n / (4 c~_n n^2)."""
    return eq.beta_n / (4 * c_hard(eq) * eq.n ** 2)


def scaled_w(table: OracleTable, n: int, u: complex, v: complex):
    """Scaled W kernels divided by their printed prefactors."""
    eq = build_equilibrium(table.spec, n)
    s = hard_edge_scale(eq)
    al, q0 = table.spec.alpha, table.spec.q[0]
    with mp.workdps(EVAL_DPS + 30):
        WI, WII, WIII = w_kernels_mp(table, n, s * complex(u), s * complex(v))
        g2 = table.gamma[n - 1] ** 2 * s
        sI = complex(g2 * WI / (mpf(s) ** (-al) * mp.exp(q0)))
        sII = None if WII is None else complex(g2 * WII)
        sIII = None if WIII is None else complex(g2 * WIII / (mpf(s) ** al * mp.exp(-q0)))
    return sI, sII, sIII


def _w_compare(table, n, regime, grid):
    al = table.spec.alpha
    if regime == "w_I":
        g = np.asarray(grid, dtype=float)
        errs = []
        for i, u in enumerate(g):
            for v in g[i + 1:]:
                if abs(u - v) < 0.1:
                    continue
                val = scaled_w(table, n, u, v)[0]
                errs.append(abs(val - table1_kernels(al, u, v, "I")))
        return np.array(errs)
    errs = []
    idx = 1 if regime == "w_II" else 2
    for u, v, row in (grid if grid is not None else W_PAIRS[regime]):
        val = scaled_w(table, n, u, v)[idx]
        errs.append(abs(val - table1_kernels(al, u, v, row)))
    return np.array(errs)


def compare_limit(table: OracleTable, regime: str, n_list, grid=None, x0: float = 0.5) -> KernelComparison:
    """Sup-grid error of the scaled finite-n kernel against its limit, per n."""
    if regime not in REGIMES:
        raise DomainError(f"regime must be one of {REGIMES}")
    n_list = list(n_list)
    if any(n < 2 or n > table.N_max for n in n_list):
        raise DomainError("n_list must lie within the oracle range")
    if regime == "bulk" and not (0 < x0 < 1):
        raise DomainError("bulk comparison needs 0 < x0 < 1")
    if grid is None and regime in DEFAULT_GRIDS:
        grid = DEFAULT_GRIDS[regime]
    sup, grids = [], {}
    for n in n_list:
        if regime.startswith("w_"):
            e = _w_compare(table, n, regime, grid)
        else:
            e, K, L = _grid_compare(table, n, regime, grid, x0)
            grids[n] = (K, L)
        sup.append(float(np.max(e)))
    order, res = fit_order(n_list, sup) if len(n_list) >= 2 else (float("nan"), float("nan"))
    return KernelComparison(regime, n_list, sup, order, res, grids)

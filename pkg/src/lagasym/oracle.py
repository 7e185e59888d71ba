"""Extended-precision orthogonal polynomials for x^alpha exp(-Q(x)) on (0, inf).

Moments come from a convergent Gamma series.  Recurrence coefficients
follow from the modified-moment-free Chebyshev algorithm carried out
with enough digits to absorb its ill-conditioning.  A rebuild at
doubled precision certifies every reported coefficient.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import mpmath
from mpmath import mp, mpc, mpf

from .errors import DomainError, NumericalError
from .weight import WeightSpec

EVAL_DPS = 50
AGREE_TOL = mpf("1e-20")
MAX_DOUBLINGS = 4


def _q_mp(spec: WeightSpec):
    # floats convert to mpf exactly
    return [mpf(c) for c in spec.q]


def _lower_series(q, J):
    """Taylor coefficients r_j of exp(-(Q(x) - q_0 - q_m x^m))."""
    m = len(q) - 1
    r = [mp.zero] * J
    r[0] = mp.one
    for j in range(J - 1):
        s = mp.zero
        for k in range(1, m):
            if j + 1 - k >= 0:
                s += k * q[k] * r[j + 1 - k]
        r[j + 1] = -s / (j + 1)
    return r


def _moments_series(spec: WeightSpec, kmax: int, dps: int):
    """Return (moments, worst cancellation in digits) at working precision dps."""
    q = _q_mp(spec)
    m = spec.m
    al = mpf(spec.alpha)
    qm = q[m]
    eps = mpf(10) ** (-dps - 5)
    # G(i) = int_0^inf x^{i+alpha} exp(-q_m x^m) dx
    cache = {}

    def G(i):
        if i not in cache:
            if i >= m and (i - m) in cache:
                s = (i - m + al + 1) / m
                cache[i] = cache[i - m] * s / qm
            else:
                s = (i + al + 1) / m
                cache[i] = mp.gamma(s) / (m * qm ** s)
        return cache[i]

    J = 64
    r = _lower_series(q, J)
    out = []
    worst = 0.0
    for k in range(kmax + 1):
        tot = mp.zero
        absum = mp.zero
        j = 0
        small = 0
        peak = mp.zero
        while True:
            if j >= J:
                J *= 2
                if J > 200000:
                    raise NumericalError("moment series did not converge", "oracle.compute_moments")
                r = _lower_series(q, J)
            t = r[j] * G(k + j)
            tot += t
            at = abs(t)
            absum += at
            peak = max(peak, at)
            # stop once m consecutive terms are negligible past the peak
            if at < peak and at <= eps * abs(tot):
                small += 1
                if small >= m:
                    break
            else:
                small = 0
            j += 1
            # ensure G cache is filled in order for the recurrence shortcut
        if tot <= 0:
            raise NumericalError(f"moment {k} not positive", "oracle.compute_moments")
        worst = max(worst, float(mpmath.log10(absum / tot)))
        out.append(tot * mp.exp(-q[0]))
    return out, worst


def compute_moments(spec: WeightSpec, kmax: int, digits: int):
    """mu_k = int_0^inf x^{k+alpha} exp(-Q(x)) dx for k = 0..kmax, as mpf."""
    if kmax < 0 or digits < 30:
        raise DomainError("compute_moments needs kmax >= 0 and digits >= 30")
    with mp.workdps(digits + 10):
        if spec.m == 1:
            q0, q1 = mpf(spec.q[0]), mpf(spec.q[1])
            al = mpf(spec.alpha)
            base = mp.gamma(al + 1) / q1 ** (al + 1) * mp.exp(-q0)
            out = [base]
            for k in range(1, kmax + 1):
                out.append(out[-1] * (k + al) / q1)
            return [+x for x in out]
    guard = 20
    for _ in range(MAX_DOUBLINGS + 1):
        with mp.workdps(digits + guard):
            mom, loss = _moments_series(spec, kmax, digits + guard)
        if loss < guard - 8:
            with mp.workdps(digits + 10):
                return [+x for x in mom]
        guard = int(loss) + 30
    raise NumericalError("moment cancellation not controlled", "oracle.compute_moments")


def chebyshev_algorithm(mom, n):
    """Monic recurrence coefficients alpha_k, beta_k (k < n) from moments 0..2n-1."""
    if len(mom) < 2 * n:
        raise DomainError("need 2n moments")
    alpha = [mp.zero] * n
    beta = [mp.zero] * n
    sig_prev = [mp.zero] * (2 * n)
    sig = list(mom[: 2 * n])
    alpha[0] = mom[1] / mom[0]
    beta[0] = mom[0]
    for k in range(1, n):
        new = [mp.zero] * (2 * n)
        for l in range(k, 2 * n - k):
            new[l] = sig[l + 1] - alpha[k - 1] * sig[l] - beta[k - 1] * sig_prev[l]
        if new[k] <= 0:
            raise NumericalError(
                f"loss of positivity at k={k}; precision insufficient",
                "oracle.build_table",
            )
        alpha[k] = new[k + 1] / new[k] - sig[k] / sig[k - 1]
        beta[k] = new[k] / sig[k - 1]
        sig_prev, sig = sig, new
    return alpha, beta


@dataclass
class OracleTable:
    """Recurrence data of the orthonormal polynomials p_0..p_{N_max}.

    x p_k = b_k p_{k+1} + a_k p_k + b_{k-1} p_{k-1}; gamma_k is the
    leading coefficient of p_k.
    """

    spec: WeightSpec
    N_max: int
    precision_digits: int
    a: list
    b: list
    gamma: list
    moments: list
    # digits of agreement with the doubled-precision rebuild
    agreement_digits: float = field(default=0.0)

    def a_float(self, k):
        return float(self.a[k])

    def b_float(self, k):
        return float(self.b[k])

    def log_gamma(self, k):
        return mp.log(self.gamma[k])

    def to_json(self) -> str:
        d = self.precision_digits + 5

        def enc(xs):
            return [mpmath.nstr(x, d, strip_zeros=False) for x in xs]

        return json.dumps(
            {
                "spec": self.spec.to_config(),
                "N_max": self.N_max,
                "precision_digits": self.precision_digits,
                "agreement_digits": self.agreement_digits,
                "a": enc(self.a),
                "b": enc(self.b),
                "gamma": enc(self.gamma),
                "moments": enc(self.moments),
            },
            indent=1,
        )

    @classmethod
    def from_json(cls, text: str) -> "OracleTable":
        d = json.loads(text)
        digits = int(d["precision_digits"])
        with mp.workdps(digits + 10):
            dec = lambda xs: [mpf(x) for x in xs]  # noqa: E731
            return cls(
                WeightSpec.from_config(d["spec"]),
                int(d["N_max"]),
                digits,
                dec(d["a"]),
                dec(d["b"]),
                dec(d["gamma"]),
                dec(d["moments"]),
                float(d.get("agreement_digits", 0.0)),
            )


def _build_once(spec: WeightSpec, N_max: int, digits: int) -> OracleTable:
    n = N_max + 2
    mom = compute_moments(spec, 2 * n - 1, digits)
    with mp.workdps(digits):
        al, be = chebyshev_algorithm(mom, n)
        a = al[: N_max + 1]
        b = [mp.sqrt(be[k + 1]) for k in range(N_max + 1)]
        # monic norms h_k = beta_0 ... beta_k, gamma_k = h_k^{-1/2}
        gam = []
        h = mp.one
        for k in range(N_max + 1):
            h *= be[k]
            gam.append(1 / mp.sqrt(h))
    return OracleTable(spec, N_max, digits, a, b, gam, mom)


def _max_rel_diff(x, y):
    worst = mp.zero
    for u, v in zip(x, y):
        worst = max(worst, abs(u - v) / abs(v))
    return worst


def build_table(spec: WeightSpec, N_max: int, digits: int | None = None) -> OracleTable:
    """Build and certify the table by agreement with a doubled-precision rebuild."""
    if not (0 <= N_max <= 100):
        raise DomainError("N_max must lie in [0, 100]")
    d = digits if digits is not None else 30 + 8 * N_max
    lo = _build_once(spec, N_max, d)
    for _ in range(MAX_DOUBLINGS):
        hi = _build_once(spec, N_max, 2 * d)
        with mp.workdps(2 * d):
            diff = max(_max_rel_diff(lo.a, hi.a) if N_max > 0 else mp.zero,
                       _max_rel_diff(lo.b, hi.b), _max_rel_diff(lo.gamma, hi.gamma))
        if diff <= AGREE_TOL:
            hi.agreement_digits = float(-mp.log10(diff)) if diff > 0 else float(2 * d)
            return hi
        lo, d = hi, 2 * d
    raise NumericalError("oracle did not reach a precision fixed point", "oracle.build_table")


# --------------------------------------------------------------------------
# evaluation


def _check_n(table: OracleTable, n: int):
    if not (0 <= n <= table.N_max):
        raise DomainError(f"n={n} outside table range 0..{table.N_max}")


def pn_all(table: OracleTable, n: int, z):
    """[p_0(z), ..., p_n(z)] as mp numbers at the current precision."""
    _check_n(table, n)
    z = mpc(z) if isinstance(z, complex) or isinstance(z, mpc) else mpf(z)
    p = [+table.gamma[0]]
    if n == 0:
        return p
    p.append((z - table.a[0]) * p[0] / table.b[0])
    for k in range(1, n):
        p.append(((z - table.a[k]) * p[k] - table.b[k - 1] * p[k - 1]) / table.b[k])
    return p


def eval_pn_mp(table: OracleTable, n: int, z, dps: int = EVAL_DPS):
    with mp.workdps(dps):
        return pn_all(table, n, z)[n]


def eval_pn(table: OracleTable, n: int, z) -> complex:
    """p_n(z) by the forward three-term recurrence."""
    with mp.workdps(EVAL_DPS):
        v = pn_all(table, n, z)[n]
        return complex(v)


def log_weight_mp(spec: WeightSpec, x):
    x = mpf(x)
    if x < 0 or (x == 0 and spec.alpha < 0):
        raise DomainError(f"weight undefined at x={x}")
    Q = mp.zero
    for c in reversed(spec.q):
        Q = Q * x + mpf(c)
    if x == 0:
        return -Q if spec.alpha == 0 else mpf("-inf")
    return mpf(spec.alpha) * mp.log(x) - Q


def cd_kernel_mp(table: OracleTable, n: int, x, y, dps: int = EVAL_DPS):
    if n < 1:
        raise DomainError("cd_kernel needs n >= 1")
    with mp.workdps(dps):
        x, y = mpf(x), mpf(y)
        sw = mp.exp((log_weight_mp(table.spec, x) + log_weight_mp(table.spec, y)) / 2)
        px = pn_all(table, n, x)
        py = pn_all(table, n, y)
        if abs(x - y) < mpf("1e-8") * max(1, abs(x)):
            s = mp.fsum(px[k] * py[k] for k in range(n))
            return sw * s
        ratio = table.gamma[n - 1] / table.gamma[n]
        return sw * ratio * (px[n] * py[n - 1] - px[n - 1] * py[n]) / (x - y)


def cd_kernel(table: OracleTable, n: int, x: float, y: float) -> float:
    """Christoffel-Darboux kernel sqrt(w(x) w(y)) sum_{k<n} p_k(x) p_k(y)."""
    _check_n(table, n)
    return float(cd_kernel_mp(table, n, x, y))


def _cauchy_w(spec: WeightSpec, z, dps: int):
    """(1/2 pi i) int_0^inf w(x)/(x-z) dx by tanh-sinh with breakpoints near z."""
    with mp.workdps(dps):
        z = mpc(z)
        r = abs(z)
        pts = {mpf(0)}
        for f in (0.25, 0.5, 1, 2, 4):
            pts.add(r * f)
        if z.real > 0:
            for f in (-4, -2, -1, 0, 1, 2, 4):
                c = z.real + f * abs(z.imag)
                if c > 0:
                    pts.add(mpf(c))
        # cover the bulk of the weight
        scale = mpf(1)
        top = mpf(2)
        while log_weight_mp(spec, top) > -(dps + 20) * mp.log(10) or top < 4 * r:
            top *= 2
        x = scale
        while x < top:
            pts.add(x)
            x *= 2
        pts = sorted(pts) + [mp.inf]

        def f(x):
            if x == 0:
                return mp.zero
            return mp.exp(log_weight_mp(spec, x)) / (x - z)

        val = mp.quad(f, pts)
        return val / (2j * mp.pi)


def cauchy_all(table: OracleTable, n: int, z, dps: int = EVAL_DPS):
    """[C(p_0 w)(z), ..., C(p_n w)(z)] via the inhomogeneous recurrence."""
    _check_n(table, n)
    z = complex(z)
    if z.imag == 0 and z.real >= 0:
        raise DomainError("Cauchy transform undefined on [0, inf)")
    if abs(z.imag) < 1e-6 * (1 + abs(z)) and z.real >= 0:
        raise DomainError("z too close to the cut [0, inf)")
    work = dps + 30
    with mp.workdps(work):
        c0 = _cauchy_w(table.spec, z, work) * table.gamma[0]
        zz = mpc(z)
        c = [c0]
        if n >= 1:
            c.append(((zz - table.a[0]) * c0 + 1 / (2j * mp.pi * table.gamma[0])) / table.b[0])
        for k in range(1, n):
            c.append(((zz - table.a[k]) * c[k] - table.b[k - 1] * c[k - 1]) / table.b[k])
        # the recurrence amplifies rounding by roughly |p_n(z) c_0 / c_n|
        p = pn_all(table, n, zz)
        loss = float(mp.log10(abs(p[n] * c0 / (table.gamma[0] * c[n])) + 1))
        if loss > work - dps:
            raise NumericalError(f"Cauchy recurrence lost {loss:.0f} digits", "oracle.cauchy_transform")
        return c


def cauchy_transform_mp(table: OracleTable, n: int, z, dps: int = EVAL_DPS):
    """C(pi_n w)(z) with pi_n the monic polynomial."""
    c = cauchy_all(table, n, z, dps)
    with mp.workdps(dps + 30):
        return c[n] / table.gamma[n]


def cauchy_transform(table: OracleTable, n: int, z: complex) -> complex:
    return complex(cauchy_transform_mp(table, n, z))


def cauchy_transform_quad(table: OracleTable, n: int, z, dps: int = 30):
    """Direct quadrature of (1/2 pi i) int pi_n w/(x-z); slow, used for cross-checks."""
    z = complex(z)
    with mp.workdps(dps):
        zz = mpc(z)
        N = table.N_max
        top = mpf(4) * (table.a[n] + 2 * table.b[n]) + 10
        while log_weight_mp(table.spec, top) + n * mp.log(top) > -(dps + 10) * mp.log(10):
            top *= 2
        pts = sorted({mpf(0), *[top * k / (4 * (n + 2)) for k in range(1, 4 * (n + 2))]} |
                     ({mpf(z.real)} if z.real > 0 else set())) + [top, mp.inf]

        def f(x):
            if x == 0:
                return mp.zero
            return pn_all(table, n, x)[n] * mp.exp(log_weight_mp(table.spec, x)) / (x - zz)

        val = mp.quad(f, pts) / (2j * mp.pi) / table.gamma[n]
        return val


def w_kernels_mp(table: OracleTable, n: int, u, v, dps: int = EVAL_DPS):
    """(W_I, W_II, W_III) at (u, v); entries needing a Cauchy transform on the cut are None."""
    if n < 1:
        raise DomainError("w_kernels needs n >= 1")
    u, v = complex(u), complex(v)
    if u == v:
        raise DomainError("w_kernels undefined on the diagonal u = v")
    on_cut = lambda z: z.imag == 0 and z.real >= 0  # noqa: E731
    with mp.workdps(dps + 30):
        gu = pn_all(table, n, mpc(u))
        gv = pn_all(table, n, mpc(v))
        pu_n, pu_m = gu[n] / table.gamma[n], gu[n - 1] / table.gamma[n - 1]
        pv_n, pv_m = gv[n] / table.gamma[n], gv[n - 1] / table.gamma[n - 1]
        d = mpc(u) - mpc(v)
        WI = (pu_n * pv_m - pu_m * pv_n) / d
        WII = WIII = None
        if not on_cut(u):
            cu = cauchy_all(table, n, u, dps)
            cu_n, cu_m = cu[n] / table.gamma[n], cu[n - 1] / table.gamma[n - 1]
            WII = (cu_n * pv_m - cu_m * pv_n) / d
            if not on_cut(v):
                cv = cauchy_all(table, n, v, dps)
                cv_n, cv_m = cv[n] / table.gamma[n], cv[n - 1] / table.gamma[n - 1]
                WIII = (cu_n * cv_m - cu_m * cv_n) / d
        return WI, WII, WIII


def w_kernels(table: OracleTable, n: int, u: complex, v: complex):
    _check_n(table, n)
    out = w_kernels_mp(table, n, u, v)
    return tuple(None if x is None else complex(x) for x in out)


def monomial_coeffs(table: OracleTable, n: int):
    """Ascending monomial coefficients of p_0..p_n, at table precision."""
    _check_n(table, n)
    with mp.workdps(table.precision_digits):
        P = [[+table.gamma[0]]]
        if n >= 1:
            P.append([-table.a[0] * table.gamma[0] / table.b[0], table.gamma[0] / table.b[0]])
        for k in range(1, n):
            nxt = [mp.zero] * (k + 2)
            for i, c in enumerate(P[k]):
                nxt[i + 1] += c
                nxt[i] -= table.a[k] * c
            for i, c in enumerate(P[k - 1]):
                nxt[i] -= table.b[k - 1] * c
            P.append([c / table.b[k] for c in nxt])
        return P


def orthonormality_residual(table: OracleTable, jmax: int) -> float:
    """max |int p_j p_k w - delta_jk| over j, k <= jmax, via the moments."""
    jmax = min(jmax, table.N_max)
    P = monomial_coeffs(table, jmax)
    mu = table.moments
    worst = mp.zero
    with mp.workdps(table.precision_digits):
        for j in range(jmax + 1):
            for k in range(j + 1):
                s = mp.fsum(P[j][i] * P[k][l] * mu[i + l] for i in range(j + 1) for l in range(k + 1))
                worst = max(worst, abs(s - (1 if j == k else 0)))
    return float(worst)

import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from lagasym.equilibrium import build_equilibrium
from lagasym.errors import DomainError
from lagasym.kernels import (
    _table1_raw,
    airy_kernel,
    bessel_kernel_hard,
    compare_limit,
    fit_order,
    hard_edge_scale,
    scaled_kernel_matrix,
    sine_kernel,
    table1_kernels,
)
from lagasym.oracle import build_table
from lagasym.weight import WeightSpec


def j_half(x):
    return math.sqrt(2 / (math.pi * x)) * math.sin(x)


def dj_half(x):
    return math.sqrt(2 / (math.pi * x)) * (math.cos(x) - math.sin(x) / (2 * x))


def test_sine_kernel_values():
    assert sine_kernel(0.3, 0.3) == 1
    assert abs(sine_kernel(1.5, 0.5)) < 1e-15
    assert sine_kernel(1.0, 0.5) == pytest.approx(2 / math.pi, rel=1e-15)
    assert sine_kernel(0.0, 1e-8) == pytest.approx(1.0, abs=1e-15)


@given(u=st.floats(-5, 5), v=st.floats(-5, 5))
def test_symmetry(u, v):
    assert sine_kernel(u, v) == pytest.approx(sine_kernel(v, u), rel=1e-14, abs=1e-15)
    assert airy_kernel(u, v) == pytest.approx(airy_kernel(v, u), rel=1e-12, abs=1e-14)
    a, b = abs(u) + 0.1, abs(v) + 0.1
    assert bessel_kernel_hard(0.7, a, b) == pytest.approx(bessel_kernel_hard(0.7, b, a), rel=1e-12, abs=1e-14)


def test_airy_kernel_values():
    assert airy_kernel(0.0, 0.0) == pytest.approx(3 ** (-2 / 3) / math.gamma(1 / 3) ** 2, rel=1e-14)
    with mpmath.workdps(30):
        for u, v in [(0.0, 1.0), (-2.0, 0.5), (1.0, 1.0)]:
            ref = mpmath.quad(lambda t: mpmath.airyai(u + t) * mpmath.airyai(v + t), [0, 5, mpmath.inf])
            assert airy_kernel(u, v) == pytest.approx(float(ref), rel=1e-10)
    assert abs(airy_kernel(0.0, 1e-5) - airy_kernel(0.0, 0.0)) < 1e-5


@pytest.mark.parametrize("alpha", [0.0, 0.7, 2.0])
def test_bessel_kernel_integral_form(alpha):
    with mpmath.workdps(30):
        for u, v in [(1.0, 2.0), (3.0, 3.0), (0.5, 10.0)]:
            ref = mpmath.quad(lambda s: mpmath.besselj(alpha, mpmath.sqrt(s * u)) * mpmath.besselj(alpha, mpmath.sqrt(s * v)), [0, 1]) / 4
            assert bessel_kernel_hard(alpha, u, v) == pytest.approx(float(ref), rel=1e-10)


def test_bessel_kernel_half_integer():
    u, v = 1.0, 2.0
    su, sv = math.sqrt(u), math.sqrt(v)
    ref = (j_half(su) * sv * dj_half(sv) - j_half(sv) * su * dj_half(su)) / (2 * (u - v))
    assert bessel_kernel_hard(0.5, u, v) == pytest.approx(ref, rel=1e-13)
    for x in (0.5, 3.0, 15.0):
        assert abs(bessel_kernel_hard(0.7, x, x) - bessel_kernel_hard(0.7, x, x + 1e-6)) <= 1e-5


def test_bessel_kernel_vectorized():
    u = np.array([[1.0, 2.0], [3.0, 4.0]])
    out = bessel_kernel_hard(0.3, u, u.T)
    assert out.shape == (2, 2)
    assert out[0, 1] == pytest.approx(bessel_kernel_hard(0.3, 2.0, 3.0))
    with pytest.raises(DomainError):
        bessel_kernel_hard(0.3, 0.0, 1.0)


def test_table1_identities():
    a = 0.7
    assert table1_kernels(a, 2, 5, "I") == pytest.approx(table1_kernels(a, 5, 2, "I"), rel=1e-14)
    u, v = 1 + 1j, 2.0
    # H1 + H2 = 2J links the two II rows to row I
    lhs = _table1_raw(a, u, v, "II+") - _table1_raw(a, u, v, "II-")
    assert abs(lhs - u ** a * table1_kernels(a, u, v, "I")) < 1e-10
    # H1 - H2 = 2iY
    y = _table1_raw(a, u, v, "II+") + _table1_raw(a, u, v, "II-")
    su, sv = cmath.sqrt(u), cmath.sqrt(v)
    Y = lambda z: complex(mpmath.bessely(a, z))  # noqa: E731
    dY = lambda z: complex(mpmath.bessely(a, z, 1))  # noqa: E731
    J = lambda z: complex(mpmath.besselj(a, z))  # noqa: E731
    dJ = lambda z: complex(mpmath.besselj(a, z, 1))  # noqa: E731
    ref = 2j * u ** (a / 2) * v ** (-a / 2) * (Y(su) * sv * dJ(sv) - J(sv) * su * dY(su)) / (4 * (u - v))
    assert abs(y - ref) < 1e-10
    # reflection across the real axis
    assert abs(table1_kernels(a, u.conjugate(), v, "II-") + table1_kernels(a, u, v, "II+").conjugate()) < 1e-13


def test_table1_half_integer_spot_value():
    u, v = 1.0, 4.0
    ref = u ** -0.25 * v ** -0.25 * (j_half(1) * 2 * dj_half(2) - j_half(2) * 1 * dj_half(1)) / (2 * (u - v))
    assert table1_kernels(0.5, u, v, "I").real == pytest.approx(ref, rel=1e-13)


def test_table1_half_plane_checks():
    with pytest.raises(DomainError):
        table1_kernels(0.5, 1 - 1j, 2, "II+")
    with pytest.raises(DomainError):
        table1_kernels(0.5, 1 + 1j, 2 + 1j, "III+-")
    with pytest.raises(DomainError):
        table1_kernels(0.5, 2, 2, "I")


@pytest.mark.parametrize("n", [5, 40, 80])
def test_hard_edge_scale_linear_q(n):
    assert hard_edge_scale(build_equilibrium(WeightSpec(0.7, (0, 1)), n)) == pytest.approx(1 / (4 * n), rel=1e-14)


def test_fit_order_power_law():
    ns = [10, 20, 40, 80]
    order, res = fit_order(ns, [3.0 * n ** -1.5 for n in ns])
    assert order == pytest.approx(-1.5, abs=1e-12) and res < 1e-12


def test_compare_limit_small():
    t = build_table(WeightSpec(0.7, (0, 1)), 20)
    c = compare_limit(t, "hard", [10, 20])
    assert c.regime == "hard" and c.n_list == [10, 20]
    assert all(np.isfinite(c.sup_error)) and c.sup_error[1] < c.sup_error[0]
    b = compare_limit(t, "bulk", [10, 20])
    # scaled kernel at the coincident centre point u = v = 0 is 1 + O(1/n)
    d = [abs(b.grids[n][0][4, 4] - 1) for n in (10, 20)]
    assert d[1] < d[0] and d[1] < 0.05
    with pytest.raises(DomainError):
        compare_limit(t, "edge", [10])
    with pytest.raises(DomainError):
        compare_limit(t, "soft", [30])


def test_scaled_kernel_matrix_symmetric():
    t = build_table(WeightSpec(0, (0, 0, 1)), 12)
    K = scaled_kernel_matrix(t, 10, [0.5, 1.0, 1.0, 2.0], 1.0)
    assert np.allclose(K, K.T, rtol=1e-14)
    assert np.all(np.diag(K) > 0)


@pytest.mark.parametrize("h", [0.0, 1e-12, 1e-8, 9.99e-4, 1.001e-3, 1e-2])
def test_near_diagonal_accuracy(h):
    with mpmath.workdps(40):
        for u in (-4.0, 0.0, 3.0):
            a, b = mpmath.mpf(u), mpmath.mpf(u) + h
            if h == 0:
                ref = mpmath.airyai(a, 1) ** 2 - a * mpmath.airyai(a) ** 2
            else:
                ref = (mpmath.airyai(a) * mpmath.airyai(b, 1) - mpmath.airyai(a, 1) * mpmath.airyai(b)) / (a - b)
            assert airy_kernel(u, u + h) == pytest.approx(float(ref), rel=1e-11)
        for alpha in (0.0, 0.7, 2.0):
            for x in (0.1, 5.0):
                X, Y = mpmath.mpf(x), mpmath.mpf(x) + h * x

                def J(t, d=0):
                    return mpmath.besselj(alpha, mpmath.sqrt(t), d)

                if h == 0:
                    ref = (J(X) ** 2 - mpmath.besselj(alpha + 1, mpmath.sqrt(X)) * mpmath.besselj(alpha - 1, mpmath.sqrt(X))) / 4
                else:
                    ref = (J(X) * mpmath.sqrt(Y) * J(Y, 1) - mpmath.sqrt(X) * J(X, 1) * J(Y)) / (2 * (X - Y))
                assert bessel_kernel_hard(alpha, x, x + h * x) == pytest.approx(float(ref), rel=1e-11)

import math

import numpy as np
import pytest
from scipy.integrate import quad

from lagasym.errors import DomainError
from lagasym.fredholm import fredholm_det_bessel, painleve_F, smallest_eig_cdf
from lagasym.kernels import bessel_kernel_hard

# det(I - J_{1,4}); Nystrom and the Painleve route agree on it to 4e-14
FROZEN_DET_ALPHA1_S4 = 0.83861256712602572


def test_alpha_zero_is_exponential():
    for s in (0.5, 4.0, 16.0, 40.0):
        assert fredholm_det_bessel(0.0, s).det == pytest.approx(math.exp(-s / 4), rel=1e-12)
        if s <= 20:
            assert painleve_F(0.0, s) == math.exp(-s / 4)


def test_frozen_value():
    assert fredholm_det_bessel(1.0, 4.0).det == pytest.approx(FROZEN_DET_ALPHA1_S4, abs=1e-12)


@pytest.mark.parametrize("alpha", [0.0, 1.0])
@pytest.mark.parametrize("s", [1.0, 4.0, 9.0, 16.0])
def test_painleve_agreement(alpha, s):
    r = fredholm_det_bessel(alpha, s)
    assert r.est_error <= 1e-10
    assert abs(r.det - painleve_F(alpha, s)) <= 1e-6


@pytest.mark.parametrize("alpha", [-0.9, -0.5, 0.3, 2.5])
def test_painleve_agreement_other_alpha(alpha):
    for s in (0.1, 5.0, 20.0):
        assert abs(fredholm_det_bessel(alpha, s).det - painleve_F(alpha, s)) <= 1e-9


def test_small_domain_behaviour():
    a = 0.7
    r = [(1 - fredholm_det_bessel(a, s).det) / s ** (a + 1) for s in (1e-4, 1e-3)]
    assert r[0] == pytest.approx(r[1], rel=0.05)
    assert painleve_F(a, 1e-8) == pytest.approx(1.0, abs=1e-10)


def test_small_s_trace():
    s = 0.01
    trace = quad(lambda x: bessel_kernel_hard(0.0, x, x), 0, s)[0]
    assert (1 - painleve_F(0.0, s)) == pytest.approx(trace, rel=0.05)


def test_monotone_in_s():
    dets = [fredholm_det_bessel(0.7, s).det for s in np.arange(0.5, 10.01, 0.5)]
    assert all(b < a for a, b in zip(dets, dets[1:]))
    assert 0 < dets[-1] <= 1


@pytest.mark.parametrize("alpha", [-0.5, 0.5])
def test_half_integer_order_doubling(alpha):
    for s in (2.0, 10.0):
        a = fredholm_det_bessel(alpha, s, 40)
        b = fredholm_det_bessel(alpha, s, 80)
        assert abs(a.det - b.det) <= 1e-8


def test_legendre_rule_for_integer_alpha():
    for s in (1.0, 9.0):
        a = fredholm_det_bessel(1.0, s, rule="legendre")
        assert abs(a.det - fredholm_det_bessel(1.0, s).det) <= 1e-10


def test_cdf():
    assert smallest_eig_cdf(0.5, 1e-4) < 1e-6
    vals = [smallest_eig_cdf(0.5, s) for s in np.linspace(0.2, 7.0, 15)]
    assert all(0 <= v <= 1 for v in vals)
    assert all(b >= a for a, b in zip(vals, vals[1:]))
    assert vals[-1] > 0.99


def test_validation():
    with pytest.raises(DomainError):
        fredholm_det_bessel(-1.0, 1.0)
    with pytest.raises(DomainError):
        fredholm_det_bessel(0.0, 60.0)
    with pytest.raises(DomainError):
        fredholm_det_bessel(0.0, 1.0, 5)
    with pytest.raises(DomainError):
        painleve_F(3.5, 1.0)
    with pytest.raises(DomainError):
        painleve_F(0.5, 25.0)
    with pytest.raises(DomainError):
        smallest_eig_cdf(0.5, 0.0)

import cmath
import math

import pytest
from hypothesis import given, strategies as st

from lagasym.branch import cacos, clog, cpow, csqrt, resolve_side
from lagasym.errors import DomainError

finite = st.floats(-50, 50, allow_nan=False)


@given(re=finite, im=finite.filter(lambda v: v != 0))
def test_off_cut_matches_principal(re, im):
    z = complex(re, im)
    assert csqrt(z, -1) == cmath.sqrt(z)
    assert clog(z, 1) == cmath.log(z)
    w = complex(re / 60, im / 60)
    assert cacos(w, 1) == cmath.acos(w)


@given(x=st.floats(1e-6, 100))
def test_cut_sides_are_limits(x):
    eps = 1e-12
    for s in (1, -1):
        z = complex(-x, s * eps * x)
        assert abs(csqrt(-x, s) - cmath.sqrt(z)) <= 1e-9 * math.sqrt(x)
        assert abs(clog(-x, s) - cmath.log(z)) <= 1e-9
        assert abs(cpow(-x, 0.3, s) - cmath.exp(0.3 * cmath.log(z))) <= 1e-9 * x ** 0.3


@pytest.mark.parametrize("w", [1.5, 3.0, -1.5, -4.0])
def test_arccos_cut_limits(w):
    for s in (1, -1):
        z = complex(w, s * 1e-13)
        assert abs(cacos(w, s) - cmath.acos(z)) < 1e-9


def test_cut_without_side_raises():
    for f in (lambda: csqrt(-1.0), lambda: clog(-2.0), lambda: cpow(-1.0, 0.5), lambda: cacos(2.0)):
        with pytest.raises(DomainError):
            f()
    with pytest.raises(DomainError):
        resolve_side(1.0, 2)


def test_powers_of_zero():
    assert cpow(0, 0.5) == 0 and cpow(0, 0) == 1
    with pytest.raises(DomainError):
        cpow(0, -0.5)

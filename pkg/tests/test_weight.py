import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lagasym.errors import DomainError, InvalidSpecError, NumericalError
from lagasym.weight import RealPolynomial, WeightSpec, a_constant, a_float, eval_weight, log_weight


def test_a_constant_values():
    assert a_constant(0) == 1
    assert a_constant(1) == Fraction(1, 2)
    assert a_constant(2) == Fraction(3, 8)
    assert a_constant(3) == Fraction(5, 16)
    assert a_float(3) == 5 / 16


def test_a_constant_matches_central_binomial():
    for k in range(12):
        assert a_constant(k) == Fraction(math.comb(2 * k, k), 4 ** k)


def test_eval_weight_examples():
    assert eval_weight(WeightSpec(0, (0, 1)), 1.0) == pytest.approx(math.exp(-1), rel=1e-15)
    assert eval_weight(WeightSpec(2, (0, 1)), 0.0) == 0.0
    assert eval_weight(WeightSpec(0.5, (0, 0, 1)), 2.0) == pytest.approx(math.sqrt(2) * math.exp(-4), rel=1e-15)


def test_eval_weight_refuses_underflow():
    with pytest.raises(NumericalError):
        eval_weight(WeightSpec(0, (0, 1)), 1000.0)


def test_log_weight_domain():
    with pytest.raises(DomainError):
        log_weight(WeightSpec(0, (0, 1)), -1.0)
    with pytest.raises(DomainError):
        log_weight(WeightSpec(-0.5, (0, 1)), 0.0)


@pytest.mark.parametrize(
    "alpha,q,code",
    [(-1.0, (0, 1), "alpha_range"), (0, (0, -1), "leading_coeff"), (0, (0, 0), "leading_coeff"),
     (0, (1,), "shape"), (float("nan"), (0, 1), "alpha_range"), (0, (0, float("inf")), "shape")],
)
def test_spec_validation(alpha, q, code):
    with pytest.raises(InvalidSpecError) as err:
        WeightSpec(alpha, q)
    assert err.value.code == code


def test_leading_coefficient_message():
    with pytest.raises(InvalidSpecError, match="q_m must be positive"):
        WeightSpec(0, (0, 1, -2))


def test_from_config_rejects_malformed():
    for cfg in ({}, {"alpha": 0}, {"alpha": 0, "q": "x"}, [], {"alpha": "a", "q": [0, 1]}):
        with pytest.raises(InvalidSpecError):
            WeightSpec.from_config(cfg)


@given(
    alpha=st.floats(-0.99, 5),
    q=st.lists(st.floats(-3, 3), min_size=1, max_size=5),
    lead=st.floats(0.01, 5),
)
def test_config_round_trip(alpha, q, lead):
    spec = WeightSpec(alpha, tuple(q) + (lead,))
    assert WeightSpec.from_config(spec.to_config()) == spec
    assert spec.m == len(q)


@given(coeffs=st.lists(st.floats(-10, 10), min_size=1, max_size=6), x=st.floats(-3, 3))
def test_polynomial_horner_and_derivative(coeffs, x):
    p = RealPolynomial(tuple(coeffs))
    direct = sum(c * x ** k for k, c in enumerate(coeffs))
    assert p(x) == pytest.approx(direct, rel=1e-12, abs=1e-9)
    h = 1e-6
    dp = p.derivative()
    exact = sum(k * c * x ** (k - 1) for k, c in enumerate(coeffs) if k)
    assert dp(x) == pytest.approx(exact, rel=1e-12, abs=1e-9)
    assert abs((p(x + h) - p(x - h)) / (2 * h) - exact) < 1e-4 * (1 + abs(exact))

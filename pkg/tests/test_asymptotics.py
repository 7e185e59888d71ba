import math

import mpmath
import pytest
from mpmath import mp

from lagasym.asymptotics import AsymptoticValue, gamma_asym, gamma_correction, pn_asym, recurrence_asym
from lagasym.conformal import Region
from lagasym.equilibrium import build_equilibrium, density
from lagasym.errors import DomainError
from lagasym.oracle import eval_pn_mp
from lagasym.weight import WeightSpec

SPECS = [WeightSpec(0, (0, 1)), WeightSpec(0.7, (0, 0, 1)), WeightSpec(0, (0, 1, 1)), WeightSpec(-0.5, (0, 0, 1, 0, 1))]


def oracle_error(table, spec, n, z, region, shift=0.0):
    eq = build_equilibrium(spec, n)
    av = pn_asym(spec, eq, n, z + shift, region)
    with mp.workdps(50):
        p = eval_pn_mp(table, n, eq.beta_n * (z + shift)) * mp.exp(-av.log_scale)
    return abs(complex(p) - av.value) / av.envelope


@pytest.mark.parametrize("alpha", [-0.5, 0.0, 0.7, 2.0])
def test_recurrence_linear_q(alpha):
    spec = WeightSpec(alpha, (0, 1))
    for n in (1, 10, 80):
        a, b = recurrence_asym(build_equilibrium(spec, n))
        assert a.value.real == pytest.approx(2 * n + alpha + 1, rel=1e-14)
        assert b.value.real == pytest.approx(n + alpha / 2, rel=1e-14)
        assert abs(b.value.real - math.sqrt(n * (n + alpha))) <= 4 * n / n ** 2


def test_recurrence_monomial_structure():
    spec = WeightSpec(0.7, (0, 0, 0, 2))
    vals = []
    for n in (10, 20, 40):
        eq = build_equilibrium(spec, n)
        a, _ = recurrence_asym(eq)
        vals.append((a.value.real / eq.beta_n - 0.5) * n)
    assert max(vals) - min(vals) < 1e-12


@pytest.mark.parametrize("alpha", [0.0, 0.3, 1.5])
def test_gamma_correction_linear_q(alpha):
    assert gamma_correction(alpha, 4.0, 4.0, 0.0) == pytest.approx((3 * alpha ** 2 + 3 * alpha + 1) / 12, rel=1e-15)
    eq = build_equilibrium(WeightSpec(alpha, (0, 1)), 25)
    g = gamma_asym(eq.spec, eq)
    assert g.value.real == pytest.approx(1 - (3 * alpha ** 2 + 3 * alpha + 1) / (12 * 25), rel=1e-15)


def test_gamma_against_laguerre_norm():
    n, alpha = 40, 0.0
    spec = WeightSpec(alpha, (0, 1))
    g = gamma_asym(spec, build_equilibrium(spec, n))
    with mp.workdps(30):
        exact = -0.5 * (mp.log(mp.factorial(n)) + mp.loggamma(n + alpha + 1))
        rel = float(abs(mp.exp(mp.log(g.value.real) + g.log_scale - exact) - 1))
    # frozen: n^2 * rel = 3.55e-3 at n = 40
    assert n * n * rel < 5e-3


def test_gamma_stirling_consistency():
    spec = WeightSpec(0.7, (0, 1, 1))
    prev = None
    for n in (10, 100, 1000):
        eq = build_equilibrium(spec, n)
        g = gamma_asym(spec, eq)
        rest = (g.log_value.real + (n + 0.35 + 0.5) * math.log(eq.beta_n) + n * eq.ell_n / 2
                - math.log(math.sqrt(2 / math.pi) * 2 ** 0.7))
        if prev is not None:
            assert abs(rest) < abs(prev) / 5
        prev = rest


@pytest.mark.parametrize("spec", SPECS)
def test_outer_values_are_real(spec):
    eq = build_equilibrium(spec, 30)
    for x in (1.2, 2.0, 5.0):
        v = pn_asym(spec, eq, None, x)
        assert abs(v.value.imag) <= 1e-12 * abs(v.value)


@pytest.mark.parametrize("spec", SPECS)
def test_conjugate_symmetry_and_scales(spec):
    eq = build_equilibrium(spec, 30)
    for z in (0.5 + 0.05j, 1.02 + 0.01j, 0.03 + 0.01j, 2 + 1j):
        up, lo = pn_asym(spec, eq, None, z), pn_asym(spec, eq, None, z.conjugate())
        assert abs(lo.value - up.value.conjugate()) <= 1e-14 * abs(up.value)
        assert lo.log_scale == up.log_scale
        assert math.isfinite(up.neglected_scale) and up.neglected_scale >= 0


def test_region_mismatch_raises():
    spec = SPECS[0]
    eq = build_equilibrium(spec, 20)
    with pytest.raises(DomainError):
        pn_asym(spec, eq, None, 2.0, Region.B_bulk)
    with pytest.raises(DomainError):
        pn_asym(spec, eq, None, 0.5, "D")
    with pytest.raises(DomainError):
        pn_asym(WeightSpec(0.1, (0, 1)), eq, None, 0.5)


def test_bulk_against_oracle_at_sixty(table):
    # C fitted on n in {20, 40, 80} from the quadrature amplitude, then checked at n = 60
    spec = WeightSpec(0.3, (0, 1))
    t = table(0.3, (0, 1))
    amps = []
    for n in (20, 40, 80):
        d = 1 / (2 * n * density(build_equilibrium(spec, n), 0.5))
        amps.append(n * math.hypot(oracle_error(t, spec, n, 0.5, "B"), oracle_error(t, spec, n, 0.5, "B", d)))
    C = max(amps)
    assert oracle_error(t, spec, 60, 0.5, "B") <= C / 60


@pytest.mark.parametrize("spec", SPECS[:2])
def test_bulk_airy_overlap(spec):
    delta = 0.1
    for n in (20, 40):
        eq = build_equilibrium(spec, n)
        b = pn_asym(spec, eq, None, 1 - delta, "B")
        c = pn_asym(spec, eq, None, 1 - delta, "C")
        s = max(b.log_scale, c.log_scale)
        diff = abs(b.value * math.exp(b.log_scale - s) - c.value * math.exp(c.log_scale - s))
        tol = b.neglected_scale * math.exp(b.log_scale - s) + c.neglected_scale * math.exp(c.log_scale - s)
        assert diff <= tol


def test_value_helpers():
    v = AsymptoticValue(2 + 0j, 0.1, 3.0)
    assert v.full() == pytest.approx(2 * math.exp(3))
    assert v.log_value.real == pytest.approx(math.log(2) + 3)

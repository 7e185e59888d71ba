"""Asymptotics of orthogonal polynomials for Laguerre-type weights x^alpha exp(-Q(x))."""

from .errors import DomainError, InvalidSpecError, LagasymError, MrsUndefinedError, NumericalError
from .weight import RealPolynomial, WeightSpec, eval_weight, log_weight
from .mrs import MrsResult, mrs_beta
from .equilibrium import EquilibriumData, build_equilibrium, density, xi_n
from .asymptotics import AsymptoticValue, gamma_asym, pn_asym, recurrence_asym
from .oracle import OracleTable, build_table
from .kernels import KernelComparison, compare_limit
from .fredholm import DeterminantResult, fredholm_det_bessel, painleve_F, smallest_eig_cdf

__version__ = "0.1.0"

__all__ = [
    "AsymptoticValue",
    "DeterminantResult",
    "DomainError",
    "EquilibriumData",
    "InvalidSpecError",
    "KernelComparison",
    "LagasymError",
    "MrsResult",
    "MrsUndefinedError",
    "NumericalError",
    "OracleTable",
    "RealPolynomial",
    "WeightSpec",
    "build_equilibrium",
    "build_table",
    "compare_limit",
    "density",
    "eval_weight",
    "fredholm_det_bessel",
    "gamma_asym",
    "log_weight",
    "mrs_beta",
    "painleve_F",
    "pn_asym",
    "recurrence_asym",
    "smallest_eig_cdf",
    "xi_n",
]

"""Weight specification, polynomial helper and the constants A_k."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import DomainError, InvalidSpecError, NumericalError


@lru_cache(maxsize=None)
def a_constant(k: int) -> Fraction:
    """Exact value of A_k = prod_{j=1}^k (2j-1)/(2j), with A_0 = 1."""
    if k < 0:
        raise DomainError("a_constant needs k >= 0")
    if k == 0:
        return Fraction(1)
    return a_constant(k - 1) * Fraction(2 * k - 1, 2 * k)


def a_float(k: int) -> float:
    return float(a_constant(k))


@dataclass(frozen=True)
class RealPolynomial:
    """Real polynomial stored by ascending coefficients."""

    coeffs: tuple

    def __post_init__(self):
        c = tuple(float(x) for x in self.coeffs)
        if not c:
            c = (0.0,)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        # Horner; works for scalars, complex numbers and numpy arrays
        acc = self.coeffs[-1] + 0 * x
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def derivative(self) -> "RealPolynomial":
        if self.degree == 0:
            return RealPolynomial((0.0,))
        return RealPolynomial(tuple(k * c for k, c in enumerate(self.coeffs) if k > 0))

    def as_array(self) -> np.ndarray:
        return np.array(self.coeffs)


@dataclass(frozen=True)
class WeightSpec:
    """Weight w(x) = x**alpha * exp(-Q(x)) on (0, inf), Q = sum q_k x**k."""

    alpha: float
    q: tuple

    def __post_init__(self):
        try:
            alpha = float(self.alpha)
            q = tuple(float(v) for v in self.q)
        except (TypeError, ValueError) as exc:
            raise InvalidSpecError(f"malformed weight spec: {exc}", "shape") from None
        if not math.isfinite(alpha) or alpha <= -1.0:
            raise InvalidSpecError("alpha must exceed -1", "alpha_range")
        if len(q) < 2:
            raise InvalidSpecError("Q must have degree at least 1", "shape")
        if not all(math.isfinite(v) for v in q):
            raise InvalidSpecError("coefficients of Q must be finite", "shape")
        if not q[-1] > 0.0:
            raise InvalidSpecError("q_m must be positive", "leading_coeff")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "q", q)

    @property
    def m(self) -> int:
        return len(self.q) - 1

    @property
    def Q(self) -> RealPolynomial:
        return RealPolynomial(self.q)

    @classmethod
    def from_config(cls, cfg: dict) -> "WeightSpec":
        if not isinstance(cfg, dict) or "alpha" not in cfg or "q" not in cfg:
            raise InvalidSpecError("config needs keys 'alpha' and 'q'", "shape")
        q = cfg["q"]
        if not isinstance(q, Sequence) or isinstance(q, str):
            raise InvalidSpecError("'q' must be a list of numbers", "shape")
        return cls(cfg["alpha"], tuple(q))

    def to_config(self) -> dict:
        return {"alpha": self.alpha, "q": list(self.q)}


def log_weight(spec: WeightSpec, x: float) -> float:
    if x < 0 or (x == 0 and spec.alpha < 0):
        raise DomainError(f"weight undefined at x={x} for alpha={spec.alpha}")
    if x == 0:
        return 0.0 if spec.alpha == 0 else -math.inf
    return spec.alpha * math.log(x) - spec.Q(x)


def eval_weight(spec: WeightSpec, x: float) -> float:
    """Return x**alpha * exp(-Q(x)); raises instead of saturating."""
    if x == 0 and spec.alpha > 0:
        return 0.0
    lw = log_weight(spec, x)
    if lw > 709.78:
        raise NumericalError(f"weight overflows at x={x}", "weight_core.eval_weight")
    val = math.exp(lw)
    if val == 0.0:
        raise NumericalError(f"weight underflows at x={x}", "weight_core.eval_weight")
    return val

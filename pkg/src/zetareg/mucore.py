"""The mu function, mu(r) = regularized integral of x^r over [0, inf).

Integer arguments r >= 0 are computed exactly along three independent
routes (zeta sum, Bernoulli sum, closed form) that must agree. Non-integer
arguments report 0 together with a numeric certificate: the lambda factor
and a truncated zeta series, transported through the reciprocity relation
when r < -1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from .errors import DomainError
from .exact import bernoulli_binomial_sum, binomial_exact, exact_sum, zeta_neg_int
from .special import (
    DEFAULT_PRECISION,
    EvalPrecision,
    gamma,
    is_integer,
    sinpi,
    zeta_real,
)

__all__ = [
    "IntegerExact",
    "NonIntegerZero",
    "ZeroCertificate",
    "MuValue",
    "DEFAULT_TRUNCATION",
    "delta",
    "delta_exact",
    "delta_binomial_form",
    "mu_int_zeta_sum",
    "mu_int_bernoulli",
    "mu_int_closed",
    "lambda_",
    "mu_series_truncated",
    "reciprocity_map",
    "mu",
]

DEFAULT_TRUNCATION = 200
LAMBDA_FLOOR = 0.78


@dataclass(frozen=True)
class ZeroCertificate:
    lambda_value: float
    truncation_N: int
    truncated_series_value: float
    # set only when the series was evaluated at -r-2 and mapped back
    reciprocity_argument: Optional[float] = None
    reciprocity_factor: Optional[float] = None

    def __post_init__(self):
        if self.lambda_value < LAMBDA_FLOOR:
            raise ValueError(f"lambda value {self.lambda_value} below {LAMBDA_FLOOR}")
        if self.truncation_N < 1:
            raise ValueError("truncation_N must be >= 1")


@dataclass(frozen=True)
class IntegerExact:
    value: Fraction
    zeta_sum: Fraction
    bernoulli_sum: Fraction
    closed_form: Fraction

    @property
    def route_values(self) -> Tuple[Fraction, Fraction, Fraction]:
        return (self.zeta_sum, self.bernoulli_sum, self.closed_form)

    @property
    def routes_agree(self) -> bool:
        return self.zeta_sum == self.bernoulli_sum == self.closed_form


@dataclass(frozen=True)
class NonIntegerZero:
    certificate: ZeroCertificate

    @property
    def value(self) -> Fraction:
        return Fraction(0)


@dataclass(frozen=True)
class MuValue:
    argument: float
    branch: Union[IntegerExact, NonIntegerZero]

    def __post_init__(self):
        if isinstance(self.branch, IntegerExact):
            if not (is_integer(self.argument) and self.argument >= 0):
                raise ValueError("IntegerExact needs a non-negative integer argument")
            if not self.branch.routes_agree:
                raise ValueError(f"derivation routes disagree at r={self.argument}: "
                                 f"{self.branch.route_values}")
        elif is_integer(self.argument):
            raise ValueError("NonIntegerZero needs a non-integer argument")

    @property
    def value(self) -> Fraction:
        return self.branch.value

    @property
    def is_integer_branch(self) -> bool:
        return isinstance(self.branch, IntegerExact)

    def __float__(self) -> float:
        return float(self.value)


def _check_natural(r, what: str) -> int:
    if not is_integer(r) or r < 0:
        raise DomainError(f"{what} needs a non-negative integer, got {r}")
    return int(r)


def delta(r: float, n: int) -> float:
    """Integral of x^r over [n-1, n]."""
    if r == -1:
        raise DomainError("r = -1 gives a logarithmic integral", code="E_MU_LOGARITHMIC")
    if n < 1:
        raise DomainError(f"delta needs n >= 1, got {n}")
    r = float(r)
    if n == 1 and r < -1:
        raise DomainError(f"integral of x^{r} over [0, 1] diverges")
    p = r + 1.0
    return (n ** p - (n - 1) ** p) / p


def delta_exact(r: int, n: int) -> Fraction:
    """(n^(r+1) - (n-1)^(r+1)) / (r+1) in exact arithmetic, integer r >= 0."""
    r = _check_natural(r, "delta_exact")
    if n < 1:
        raise DomainError(f"delta needs n >= 1, got {n}")
    return Fraction(n ** (r + 1) - (n - 1) ** (r + 1), r + 1)


def delta_binomial_form(r: int, n: int) -> Fraction:
    """Delta(r, n) after expanding (n-1)^(r+1) binomially."""
    r = _check_natural(r, "delta_binomial_form")
    if n < 1:
        raise DomainError(f"delta needs n >= 1, got {n}")
    total = sum(binomial_exact(r + 1, k) * (-1) ** (r - k) * n ** k for k in range(r + 1))
    return total / (r + 1)


def mu_int_zeta_sum(r: int) -> Fraction:
    r = _check_natural(r, "mu_int_zeta_sum")
    total = exact_sum(binomial_exact(r + 1, k) * (-1) ** (r - k) * zeta_neg_int(k)
                      for k in range(r + 1))
    return total / (r + 1)


def mu_int_bernoulli(r: int) -> Fraction:
    r = _check_natural(r, "mu_int_bernoulli")
    return Fraction((-1) ** r, (r + 1) * (r + 2)) * bernoulli_binomial_sum(r)


def mu_int_closed(r: int) -> Fraction:
    r = _check_natural(r, "mu_int_closed")
    return Fraction((-1) ** (r + 1), (r + 1) * (r + 2))


def lambda_(r: float) -> float:
    """1 - sin(pi r) / (pi (r+1)), extended by its limit 2 at r = -1."""
    r = float(r)
    p = r + 1.0
    if p == 0.0:
        return 2.0
    return 1.0 - sinpi(r) / (math.pi * p)


def mu_series_truncated(r: float, N: int, precision: EvalPrecision = DEFAULT_PRECISION) -> float:
    """Partial sum of the zeta series for mu at non-integer r > -1.

    Computes Gamma(r+1) * sum_{k=1}^{N} (-1)^(k+1) zeta(k-r-1) / (k! Gamma(r+2-k)).
    The gamma ratio is carried by the recurrence
    c_{k+1} = c_k (r+1-k)/(k+1), c_1 = 1, since k! and Gamma(r+2-k)
    leave the double range long before k = 200.
    """
    if is_integer(r):
        raise DomainError(f"series certificate needs a non-integer r, got {r}")
    r = float(r)
    if not r > -1.0:
        raise DomainError(f"series does not converge for r = {r} <= -1; use reciprocity",
                          code="E_NONCONVERGENT")
    if N < 1 or N > precision.max_terms:
        raise DomainError(f"truncation N must be in [1, {precision.max_terms}], got {N}")
    terms = []
    c = 1.0  # Gamma(r+1) / (1! Gamma(r+1))
    for k in range(1, N + 1):
        sign = 1.0 if k % 2 else -1.0
        # near-integer r puts k-r-1 close to 1, but c_k vanishes there too
        terms.append(sign * c * zeta_real(k - r - 1.0, precision, pole_guard=0.0))
        c *= (r + 1.0 - k) / (k + 1.0)
    return math.fsum(terms)


def reciprocity_map(r: float) -> Tuple[float, float]:
    """Return (-r-2, sin(pi r) Gamma(-r-1) / pi).

    mu(-r-2) = factor * mu(r); used to carry a certificate from r > -1
    over to its mirror argument below -1.
    """
    if is_integer(r):
        raise DomainError(f"reciprocity map needs a non-integer r, got {r}")
    r = float(r)
    return -r - 2.0, sinpi(r) * gamma(-r - 1.0) / math.pi


def mu(r, truncation: int = DEFAULT_TRUNCATION,
       precision: EvalPrecision = DEFAULT_PRECISION) -> MuValue:
    """Dispatch to the exact integer branch or the certified zero branch."""
    if is_integer(r):
        n = int(r)
        if n == -1:
            raise DomainError("mu(-1) is the logarithmic integral, not handled",
                              code="E_MU_LOGARITHMIC")
        if n < 0:
            raise DomainError(f"mu is not defined at negative integer {n}",
                              code="E_MU_NEGATIVE_INTEGER")
        routes = (mu_int_zeta_sum(n), mu_int_bernoulli(n), mu_int_closed(n))
        return MuValue(n, IntegerExact(routes[2], *routes))

    r = float(r)
    lam = lambda_(r)
    if r > -1.0:
        series = mu_series_truncated(r, truncation, precision)
        cert = ZeroCertificate(lam, truncation, series)
    else:
        mirror = -r - 2.0
        _, factor = reciprocity_map(mirror)
        series = factor * mu_series_truncated(mirror, truncation, precision)
        cert = ZeroCertificate(lam, truncation, series,
                               reciprocity_argument=mirror, reciprocity_factor=factor)
    return MuValue(r, NonIntegerZero(cert))

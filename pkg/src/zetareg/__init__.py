"""Zeta-regularized values of divergent power integrals.

mu(r) assigns int_0^inf x^r dx the value (-1)^(r+1)/((r+1)(r+2)) for
integer r >= 0 and 0 for non-integer r; power series are regularized
termwise.
"""

from .errors import DivergenceError, DomainError, PoleError, QueryParseError, ZetaRegError
from .exact import bernoulli, bernoulli_binomial_sum, binomial_exact, zeta_neg_int
from .mucore import (
    MuValue,
    delta,
    delta_binomial_form,
    lambda_,
    mu,
    mu_int_bernoulli,
    mu_int_closed,
    mu_int_zeta_sum,
    mu_series_truncated,
    reciprocity_map,
)
from .regint import (
    builtin_series,
    double_integral_remark,
    mu_sum_partial,
    regularize_integral,
)
from .special import EvalPrecision, binomial_real, gamma, zeta_real

__version__ = "0.1.0"

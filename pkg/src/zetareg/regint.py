"""Regularized integrals of power series, int_0^inf f(x) dx = sum_k a_k mu(k).

Sums are accumulated exactly and rounded once. Tail control uses the
alternating-series bound (first omitted nonzero term) unless the series
declares its own bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from .errors import DivergenceError, DomainError
from .exact import exact_sum, format_rational, parse_rational
from .mucore import mu_int_closed

__all__ = [
    "PowerSeries",
    "RegularizedResult",
    "BUILTIN_SERIES",
    "builtin_series",
    "load_series_file",
    "parse_series_text",
    "combine",
    "mu_sum_partial",
    "regularize_integral",
    "double_integral_remark",
]

DIVERGENCE_WINDOW = 10
TAIL_SEARCH = 64


@dataclass(frozen=True)
class PowerSeries:
    name: str
    coefficient: Callable[[int], Fraction]
    declared_tail_bound: Optional[Callable[[int], float]] = None
    # last nonzero index for polynomials, None for infinite series
    degree: Optional[int] = None
    # (symbolic text, numeric value) of the regularized integral, if known
    closed_form: Optional[Tuple[str, float]] = None


@dataclass(frozen=True)
class RegularizedResult:
    value: float
    partial_sum_N: int
    tail_estimate: float
    exact_value: Optional[str] = None
    partial_sum_exact: Optional[Fraction] = None
    alternating: bool = False

    def __post_init__(self):
        if not self.tail_estimate >= 0:
            raise ValueError("tail_estimate must be >= 0")


def _exp(k: int) -> Fraction:
    return Fraction(1, math.factorial(k))


def _geometric(k: int) -> Fraction:
    return Fraction(1)


def _sin(k: int) -> Fraction:
    if k % 2 == 0:
        return Fraction(0)
    return Fraction((-1) ** ((k - 1) // 2), math.factorial(k))


def _cos(k: int) -> Fraction:
    if k % 2:
        return Fraction(0)
    return Fraction((-1) ** (k // 2), math.factorial(k))


# sum_k a_k (-1)^(k+1) k!/(k+2)! collapses for these four; see tests for the oracle
BUILTIN_SERIES: Dict[str, PowerSeries] = {
    "exp": PowerSeries("exp", _exp, closed_form=("-1/e", -math.exp(-1.0))),
    "geometric": PowerSeries("geometric", _geometric,
                             closed_form=("1 - log(4)", 1.0 - 2.0 * math.log(2.0))),
    "sin": PowerSeries("sin", _sin, closed_form=("1 - sin(1)", 1.0 - math.sin(1.0))),
    "cos": PowerSeries("cos", _cos, closed_form=("cos(1) - 1", math.cos(1.0) - 1.0)),
}


def builtin_series(name: str) -> PowerSeries:
    try:
        return BUILTIN_SERIES[name]
    except KeyError:
        raise DomainError(f"unknown series {name!r}; available: {', '.join(sorted(BUILTIN_SERIES))}",
                          code="E_UNKNOWN_SERIES") from None


def parse_series_text(text: str, name: str = "file") -> PowerSeries:
    """Parse ``k,p/q`` lines (strictly increasing k, '#' comments)."""
    coeffs: Dict[int, Fraction] = {}
    last = -1
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            k_text, q_text = line.split(",")
            k = int(k_text)
            q = parse_rational(q_text)
        except (ValueError, ZeroDivisionError):
            raise DomainError(f"{name}:{lineno}: expected 'k,p/q', got {raw!r}",
                              code="E_SERIES_FILE") from None
        if k <= last:
            raise DomainError(f"{name}:{lineno}: index {k} not strictly increasing",
                              code="E_SERIES_FILE")
        last = k
        if q:
            coeffs[k] = q
    degree = max(coeffs, default=0)
    return PowerSeries(name, lambda k: coeffs.get(k, Fraction(0)), degree=degree)


def load_series_file(path) -> PowerSeries:
    path = Path(path)
    return parse_series_text(path.read_text(encoding="utf-8"), name=path.name)


def combine(alpha: Fraction, f: PowerSeries, beta: Fraction, g: PowerSeries) -> PowerSeries:
    """Coefficientwise alpha*f + beta*g."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    degree = None
    if f.degree is not None and g.degree is not None:
        degree = max(f.degree, g.degree)
    return PowerSeries(f"{alpha}*{f.name}+{beta}*{g.name}",
                       lambda k: alpha * f.coefficient(k) + beta * g.coefficient(k),
                       degree=degree)


def mu_sum_partial(N: int) -> Fraction:
    """sum_{k=0}^{N} mu(k), exactly."""
    if N < 0:
        raise DomainError(f"mu_sum_partial needs N >= 0, got {N}")
    return exact_sum(mu_int_closed(k) for k in range(N + 1))


def _check_decay(terms: List[Fraction]) -> None:
    mags = [abs(t) for t in terms if t]
    window = mags[-DIVERGENCE_WINDOW:]
    if len(window) >= 2 and window[-1] >= window[0]:
        raise DivergenceError(
            f"term magnitudes |a_k mu(k)| do not decrease over the last {len(window)} "
            f"nonzero terms ({float(window[0]):.3g} -> {float(window[-1]):.3g})")


def _alternates(terms: List[Fraction]) -> bool:
    signs = [t > 0 for t in terms if t]
    return len(signs) >= 2 and all(a != b for a, b in zip(signs, signs[1:]))


def regularize_integral(series: PowerSeries, N: int) -> RegularizedResult:
    """Regularized integral of ``series`` over [0, inf) from its first N+1 terms."""
    if N < 1:
        raise DomainError(f"regularize_integral needs N >= 1, got {N}")
    terms = [series.coefficient(k) * mu_int_closed(k) for k in range(N + 1)]
    total = exact_sum(terms)
    finite = series.degree is not None and series.degree <= N

    if finite:
        return RegularizedResult(float(total), N, 0.0, exact_value=format_rational(total),
                                 partial_sum_exact=total)

    _check_decay(terms)
    tag = series.closed_form[0] if series.closed_form else None
    if series.declared_tail_bound is not None:
        return RegularizedResult(float(total), N, float(series.declared_tail_bound(N)),
                                 exact_value=tag, partial_sum_exact=total)

    nxt = None
    for k in range(N + 1, N + 1 + TAIL_SEARCH):
        t = series.coefficient(k) * mu_int_closed(k)
        if t:
            nxt = t
            break
    recent = [t for t in terms if t][-DIVERGENCE_WINDOW:]
    alternating = nxt is not None and _alternates(recent + [nxt])
    tail = float(abs(nxt)) if alternating else math.inf
    return RegularizedResult(float(total), N, tail, exact_value=tag,
                             partial_sum_exact=total, alternating=alternating)


def double_integral_remark() -> float:
    """Limit of sum_k mu(k), the double integral of x^r over r, x in [0, inf).

    Splitting mu(k) = (-1)^(k+1) (1/(k+1) - 1/(k+2)) turns the sum into two
    shifted alternating harmonic series, -log 2 + (1 - log 2).
    """
    return 1.0 - 2.0 * math.log(2.0)

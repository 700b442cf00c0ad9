"""Exact rational arithmetic: binomials, Bernoulli numbers, zeta at -k.

Rationals are :class:`fractions.Fraction`; they are always kept in lowest
terms with a positive denominator, which is exactly the canonical form we
need.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Iterable, List

__all__ = [
    "Rational",
    "BernoulliTable",
    "binomial_exact",
    "bernoulli",
    "zeta_neg_int",
    "bernoulli_binomial_sum",
    "format_rational",
    "parse_rational",
    "exact_sum",
]

Rational = Fraction


def format_rational(q: Fraction) -> str:
    """Render as ``p/q``; the denominator is dropped when it is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    # accept the typographic minus sign as well as ASCII '-'
    return Fraction(text.strip().replace("−", "-"))


def exact_sum(terms: Iterable[Fraction]) -> Fraction:
    """Sum rationals by pairwise splitting.

    Much faster than a left fold when denominators share few factors, as
    the intermediate denominators stay balanced.
    """
    items: List[Fraction] = [Fraction(t) for t in terms]
    if not items:
        return Fraction(0)
    while len(items) > 1:
        paired = [items[i] + items[i + 1] for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            paired.append(items[-1])
        items = paired
    return items[0]


def binomial_exact(m: int, l: int) -> Fraction:
    if m < 0:
        raise ValueError(f"binomial_exact requires m >= 0, got {m}")
    if l < 0 or l > m:
        return Fraction(0)
    return Fraction(math.comb(m, l))


class BernoulliTable:
    """Grow-only memo of B_0, B_1, ... (B_1 = -1/2).

    Entries are filled strictly in index order from
    ``sum_{k<m} C(m, k) B_k = 0``; once computed a value is never
    recomputed. Reads are lock-free; extension takes a lock.
    """

    def __init__(self) -> None:
        self._values: List[Fraction] = [Fraction(1)]
        self._lock = threading.Lock()

    @property
    def max_index(self) -> int:
        return len(self._values) - 1

    @property
    def values(self) -> tuple:
        return tuple(self._values)

    def _extend_to(self, n: int) -> None:
        with self._lock:
            vals = self._values
            while len(vals) <= n:
                m = len(vals) + 1  # solve the m-th relation for B_{m-1}
                acc = exact_sum(math.comb(m, k) * vals[k] for k in range(m - 1))
                vals.append(-acc / m)

    def __getitem__(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError(f"Bernoulli index must be >= 0, got {n}")
        if n >= len(self._values):
            self._extend_to(n)
        return self._values[n]

    def __len__(self) -> int:
        return len(self._values)


_TABLE = BernoulliTable()


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n, with B_1 = -1/2."""
    return _TABLE[n]


def zeta_neg_int(k: int) -> Fraction:
    """zeta(-k) = (-1)^k B_{k+1} / (k+1) for k >= 0."""
    if k < 0:
        raise ValueError(f"zeta_neg_int requires k >= 0, got {k}")
    return (-1) ** k * bernoulli(k + 1) / (k + 1)


def bernoulli_binomial_sum(r: int) -> Fraction:
    """sum_{k=1}^{r+1} C(r+2, k) B_k, which is -1 for every r >= 0."""
    if r < 0:
        raise ValueError(f"bernoulli_binomial_sum requires r >= 0, got {r}")
    return exact_sum(math.comb(r + 2, k) * bernoulli(k) for k in range(1, r + 2))

"""Identity checks exposed through ``zetareg verify``.

Each check returns the worst residual it saw and the tolerance it was held
to. Exact checks report residual 0 on success.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from . import exact, mucore, regint, special

SUITES = ("exact", "special", "mu", "regint")


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    worst_residual: float
    tolerance: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status}  {self.suite:<8} {self.name:<40} worst={self.worst_residual:.3e} "
                f"tol={self.tolerance:.1e} {self.detail}").rstrip()


def akiyama_tanigawa(n: int) -> List[Fraction]:
    """B_0..B_n by the Akiyama-Tanigawa triangle, switched to B_1 = -1/2."""
    a = [Fraction(0)] * (n + 1)
    out = []
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    if n >= 1:
        out[1] = -out[1]
    return out


def _exact_check(name, pairs) -> Tuple[str, float, float, str]:
    worst = Fraction(0)
    bad = None
    for label, got, want in pairs:
        diff = abs(Fraction(got) - Fraction(want))
        if diff > worst:
            worst, bad = diff, label
    return name, float(worst), 0.0, "" if bad is None else f"first failure at {bad}"


# ---- exact ---------------------------------------------------------------

def _bernoulli_recurrence():
    return _exact_check("bernoulli recurrence m<=62", (
        (m, exact.exact_sum(exact.binomial_exact(m, k) * exact.bernoulli(k) for k in range(m)), 0)
        for m in range(2, 63)))


def _bernoulli_oracle():
    ref = akiyama_tanigawa(60)
    return _exact_check("bernoulli vs Akiyama-Tanigawa n<=60",
                        ((n, exact.bernoulli(n), ref[n]) for n in range(61)))


def _successor_identity():
    return _exact_check("C(r+1,k) = (k+1)/(r+2) C(r+2,k+1)", (
        ((r, k), exact.binomial_exact(r + 1, k),
         Fraction(k + 1, r + 2) * exact.binomial_exact(r + 2, k + 1))
        for r in range(61) for k in range(r + 2)))


def _sum_cb():
    return _exact_check("sum C(r+2,k) B_k = -1, r<=50",
                        ((r, exact.bernoulli_binomial_sum(r), -1) for r in range(51)))


def _rational_roundtrip():
    rng = random.Random(20240601)
    pairs = []
    for i in range(500):
        q = Fraction(rng.randint(-10 ** 12, 10 ** 12), rng.randint(1, 10 ** 9))
        pairs.append((str(q), exact.parse_rational(exact.format_rational(q)), q))
    return _exact_check("rational text round-trip", pairs)


# ---- special -------------------------------------------------------------

def _gamma_recurrence():
    worst = 0.0
    for i in range(1000):
        x = -20.0 + 0.04 * i + 0.02
        g1 = special.gamma(x + 1.0)
        worst = max(worst, abs(g1 - x * special.gamma(x)) / abs(g1))
    return "gamma recurrence on [-20,20]", worst, 1e-11, ""


def _reflection():
    rng = random.Random(12345)
    worst = 0.0
    for _ in range(1000):
        a = rng.uniform(-10.0, 10.0)
        if a.is_integer():
            continue
        ref = math.pi / special.sinpi(a)
        worst = max(worst, abs(special.reflection_residual(a)) / abs(ref))
    return "reflection formula (relative)", worst, 1e-9, ""


def _gamma_sin():
    worst = 0.0
    for r in (0.1, 0.5, 1.5, 2.75, -0.5):
        for k in range(1, 21):
            worst = max(worst, abs(special.gamma_sin_identity_residual(r, k)))
    return "gamma-sin identity", worst, 1e-9, ""


def _zeta_neg_ints():
    worst = 0.0
    for k in range(26):
        worst = max(worst, abs(special.zeta_real(-k) - exact.zeta_neg_int(k)))
    return "zeta(-k) numeric vs exact, k<=25", float(worst), 1e-12, ""


def _zeta_integral():
    worst = 0.0
    for s in (1.5, 2.0, 3.0):
        z = special.zeta_real(s)
        worst = max(worst, abs(special.zeta_integral_form(s) - z) / abs(z))
    return "zeta integral representation", worst, 1e-6, ""


# ---- mu ------------------------------------------------------------------

def _route_agreement():
    pairs = []
    for r in range(41):
        c = mucore.mu_int_closed(r)
        pairs.append((r, mucore.mu_int_zeta_sum(r), c))
        pairs.append((r, mucore.mu_int_bernoulli(r), c))
    return _exact_check("three mu routes agree, r<=40", pairs)


def _sign_law():
    return _exact_check("mu closed form sign/magnitude", (
        (r, mucore.mu_int_closed(r), Fraction((-1) ** (r + 1), (r + 1) * (r + 2)))
        for r in range(41)))


def _delta_consistency():
    return _exact_check("delta binomial form, r,n<=10", (
        ((r, n), mucore.delta_binomial_form(r, n), mucore.delta_exact(r, n))
        for r in range(11) for n in range(1, 11)))


def _telescoping():
    pairs = []
    for r in range(11):
        for N in range(1, 51):
            total = sum(mucore.delta_exact(r, n) for n in range(1, N + 1))
            pairs.append(((r, N), total, Fraction(N ** (r + 1), r + 1)))
    return _exact_check("sum of delta telescopes, r<=10, N<=50", pairs)


def _lambda_bounds():
    lo, hi = math.inf, -math.inf
    for i in range(10001):
        lam = mucore.lambda_(-10.0 + 20.0 * i / 10000)
        lo, hi = min(lo, lam), max(hi, lam)
    residual = max(0.0, 0.7827 - lo, hi - 2.0)
    return "lambda in [0.7827, 2]", residual, 1e-12, f"min={lo:.6f} max={hi:.6f}"


def _certificate_decay():
    worst = 0.0
    for r in (0.25, 0.5, 1.5, 2.75):
        mags = [abs(mucore.mu_series_truncated(r, N)) for N in (25, 50, 100, 200)]
        for a, b in zip(mags, mags[1:]):
            worst = max(worst, b - a)
    return "certificate series non-increasing", worst, 0.0, ""


def _reciprocity_involution():
    worst = 0.0
    for r in (0.25, 0.5, 1.5, 2.75, -0.5, -2.5, -7.3):
        back, _ = mucore.reciprocity_map(mucore.reciprocity_map(r)[0])
        worst = max(worst, abs(back - r))
    return "reciprocity map involution", worst, 1e-14, ""


# ---- regint --------------------------------------------------------------

def _mu_sum_exact():
    pairs = []
    for N in range(101):
        split = sum(Fraction((-1) ** (k + 1), k + 1) - Fraction((-1) ** (k + 1), k + 2)
                    for k in range(N + 1))
        pairs.append((N, regint.mu_sum_partial(N), split))
    return _exact_check("musum vs partial fractions, N<=100", pairs)


def _musum_limit():
    err = abs(float(regint.mu_sum_partial(1000)) - (1.0 - math.log(4.0)))
    return "musum(1000) -> 1 - log 4", err, 1e-6, ""


def _exp_remark():
    err = abs(regint.regularize_integral(regint.builtin_series("exp"), 20).value + math.exp(-1.0))
    return "regint(exp, 20) -> -1/e", err, 1e-12, ""


def _tail_contract():
    worst = 0.0
    for name in ("exp", "geometric"):
        s = regint.builtin_series(name)
        for N in (10, 20, 50):
            a = regint.regularize_integral(s, N)
            b = regint.regularize_integral(s, 2 * N)
            worst = max(worst, abs(a.partial_sum_exact - b.partial_sum_exact) - a.tail_estimate)
    return "alternating tail bound", max(worst, 0.0), 0.0, ""


def _linearity():
    f, g = regint.builtin_series("exp"), regint.builtin_series("sin")
    alpha, beta = Fraction(3, 7), Fraction(-2, 5)
    combo = regint.combine(alpha, f, beta, g)
    pairs = []
    for N in (5, 10, 20):
        lhs = regint.regularize_integral(combo, N).partial_sum_exact
        rhs = (alpha * regint.regularize_integral(f, N).partial_sum_exact
               + beta * regint.regularize_integral(g, N).partial_sum_exact)
        pairs.append((N, lhs, rhs))
    return _exact_check("regularization is linear", pairs)


CHECKS: Dict[str, List[Callable]] = {
    "exact": [_bernoulli_recurrence, _bernoulli_oracle, _successor_identity, _sum_cb,
              _rational_roundtrip],
    "special": [_gamma_recurrence, _reflection, _gamma_sin, _zeta_neg_ints, _zeta_integral],
    "mu": [_route_agreement, _sign_law, _delta_consistency, _telescoping, _lambda_bounds,
           _certificate_decay, _reciprocity_involution],
    "regint": [_mu_sum_exact, _musum_limit, _exp_remark, _tail_contract, _linearity],
}


def _run(suite: str, check: Callable) -> CheckResult:
    name, worst, tol, detail = check()
    return CheckResult(suite, name, worst <= tol, worst, tol, detail)


def verify(suite: str = "all", workers: int = 4) -> List[CheckResult]:
    if suite == "all":
        suites = SUITES
    elif suite in CHECKS:
        suites = (suite,)
    else:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)} or all")
    jobs = [(s, c) for s in suites for c in CHECKS[s]]
    # callees are pure; order of the report follows the job list
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda job: _run(*job), jobs))

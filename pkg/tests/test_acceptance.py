"""Acceptance criteria, one test per criterion.

Each test prints a PASS/FAIL line through the ``criterion`` fixture; the
lines are collected again in the terminal summary.
"""

import csv
import io
import json
import math
import random
import time
from fractions import Fraction

import mpmath
import pytest

from zetareg.cli import main
from zetareg.exact import bernoulli, binomial_exact, zeta_neg_int
from zetareg.mucore import (
    delta_binomial_form,
    lambda_,
    mu,
    mu_int_bernoulli,
    mu_int_closed,
    mu_int_zeta_sum,
    mu_series_truncated,
)
from zetareg.regint import builtin_series, mu_sum_partial, regularize_integral
from zetareg.special import (
    gamma_sin_identity_residual,
    reflection_residual,
    sinpi,
    zeta_integral_form,
    zeta_real,
)
from zetareg.tables import lambda_table

# 40-digit values from the gamma-function form of the series, fixed before the build
SERIES_N200 = {
    0.25: 0.0002171692956146495580172,
    0.5: 0.00006661537504393137473139,
    1.5: -3.020344460430137897141e-7,
    2.75: 6.403463940522598219607e-10,
}
# minimum of lambda on the step-1e-3 grid over [-10, 10], mpmath dense-grid oracle
LAMBDA_MIN = 0.782766466141555


def test_criterion_01_closed_form_table(criterion):
    t0 = time.perf_counter()
    table = [Fraction(-1, 2), Fraction(1, 6), Fraction(-1, 12), Fraction(1, 20), Fraction(-1, 30),
             Fraction(1, 42), Fraction(-1, 56), Fraction(1, 72), Fraction(-1, 90),
             Fraction(1, 110), Fraction(-1, 132)]
    values = [mu(r).value for r in range(11)]
    agree = all(mu_int_zeta_sum(r) == mu_int_bernoulli(r) == mu_int_closed(r) for r in range(41))
    elapsed = time.perf_counter() - t0
    ok = values == table and agree and elapsed < 1.0
    criterion(1, "closed-form mu table, three routes agree r<=40", ok, f"({elapsed:.3f}s)")
    assert values == table
    assert agree
    assert elapsed < 1.0


def test_criterion_02_bernoulli_identity(criterion):
    t0 = time.perf_counter()
    sums = [sum((binomial_exact(r + 2, k) * bernoulli(k) for k in range(1, r + 2)), Fraction(0))
            for r in range(51)]
    elapsed = time.perf_counter() - t0
    ok = all(s == -1 for s in sums) and elapsed < 1.0
    criterion(2, "sum C(r+2,k) B_k = -1 for r<=50", ok, f"({elapsed:.3f}s)")
    assert all(s == -1 for s in sums)
    assert elapsed < 1.0


def test_criterion_03_zeta_nonpositive_integers(criterion):
    expected = {0: Fraction(-1, 2), 1: Fraction(-1, 12), 2: Fraction(0), 3: Fraction(1, 120)}
    exact_ok = all(zeta_neg_int(k) == v for k, v in expected.items())
    worst = max(abs(zeta_real(-k) - float(v)) for k, v in expected.items())
    ok = exact_ok and worst <= 1e-12
    criterion(3, "zeta(0), zeta(-1), zeta(-2), zeta(-3)", ok, f"(worst abs err {worst:.1e})")
    assert exact_ok
    assert worst <= 1e-12


def test_criterion_04_reflection_and_gamma_sin(criterion):
    rng = random.Random(20261016)
    worst_reflection = 0.0
    for _ in range(1000):
        a = rng.uniform(-10, 10)
        worst_reflection = max(worst_reflection,
                               abs(reflection_residual(a)) / abs(math.pi / sinpi(a)))
    worst_gs = 0.0
    for r in (0.1, 0.25, 0.5, 1.5, 2.75, -0.5):
        scale = abs(math.sin(math.pi * r) / math.pi)
        for k in range(1, 201):
            worst_gs = max(worst_gs, abs(gamma_sin_identity_residual(r, k)) / scale)
    ok = worst_reflection <= 1e-9 and worst_gs <= 1e-9
    criterion(4, "reflection and gamma-sin residuals", ok,
              f"(reflection {worst_reflection:.1e}, gamma-sin {worst_gs:.1e})")
    assert worst_reflection <= 1e-9
    assert worst_gs <= 1e-9


def test_criterion_05_lambda_positivity(criterion):
    text = lambda_table("-10", "10", "0.001")
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["r", "lambda"]
    r = [Fraction(a) for a, _ in rows[1:]]
    lam = [float(b) for _, b in rows[1:]]
    assert len(lam) == 20001
    lo, hi = min(lam), max(lam)
    at_minus_one = lam[r.index(-1)]
    argmin = float(r[lam.index(lo)])
    # shape: maximum 2 at r = -1, decays toward 1 at both ends, dips below 1 near the minimum
    shape = hi == at_minus_one == 2.0 and abs(lam[0] - 1) < 0.02 and abs(lam[-1] - 1) < 0.02 \
        and argmin in (0.43, -2.43)
    ok = abs(lo - LAMBDA_MIN) <= 1e-4 and abs(lo - 0.78277) <= 1e-4 and hi <= 2 + 1e-12 \
        and lambda_(-1) == 2.0 and shape
    criterion(5, "lambda positivity and curve shape", ok, f"(min {lo:.6f} at r={argmin}, max {hi})")
    assert abs(lo - LAMBDA_MIN) <= 1e-4
    assert hi <= 2 + 1e-12
    assert lambda_(-1) == 2.0
    assert shape


def test_criterion_06_certificate_decay(criterion):
    ok = True
    details = []
    for r, ref in SERIES_N200.items():
        mags = [abs(mu_series_truncated(r, N)) for N in (25, 50, 100, 200)]
        monotone = all(a >= b for a, b in zip(mags, mags[1:]))
        err = abs(mu_series_truncated(r, 200) - ref)
        ok = ok and monotone and err <= 1e-8
        details.append(f"r={r}: {err:.0e}")
    criterion(6, "non-integer certificate decays, N=200 matches oracle", ok,
              "(" + ", ".join(details) + ")")
    assert ok


def test_criterion_07_mu_sum(criterion):
    target = float(1 - mpmath.log(4))
    err = abs(float(mu_sum_partial(1000)) - target)
    ok = err <= 1e-6
    criterion(7, "sum_{k<=1000} mu(k) -> 1 - log 4", ok, f"(err {err:.2e})")
    assert ok


def test_criterion_08_exp(criterion):
    res = regularize_integral(builtin_series("exp"), 20)
    err = abs(res.value - float(-1 / mpmath.e))
    ok = err <= 1e-12
    criterion(8, "regularized integral of exp = -1/e", ok, f"(err {err:.1e})")
    assert ok


def test_criterion_09_telescoping(criterion):
    ok = True
    for r in range(11):
        running = Fraction(0)
        for N in range(1, 51):
            running += delta_binomial_form(r, N)
            ok = ok and running == Fraction(N ** (r + 1), r + 1)
    criterion(9, "telescoped Delta sums, r<=10, N<=50", ok)
    assert ok


def test_criterion_10_integral_representation(criterion):
    worst = max(abs(zeta_integral_form(s) - zeta_real(s)) / zeta_real(s) for s in (1.5, 2.0, 3.0))
    ok = worst <= 1e-6
    criterion(10, "quadrature of the integral form matches zeta", ok, f"(worst rel {worst:.1e})")
    assert ok


def test_criterion_11_cli_contract(criterion, capsys):
    results = {}
    results["eval"] = main(["eval", "mu(3)", "--format", "json"])
    doc = json.loads(capsys.readouterr().out)
    results["lambda-table"] = main(["lambda-table", "--from", "-4", "--to", "2", "--step", "0.5",
                                    "--format", "csv"])
    table = capsys.readouterr().out
    results["verify"] = main(["verify", "--suite", "all"])
    capsys.readouterr()
    results["regint"] = main(["regint", "--series", "exp", "--n", "20"])
    capsys.readouterr()
    parse_code = main(["eval", "mu(3,)"])
    err = capsys.readouterr().err
    ok = (all(c == 0 for c in results.values()) and doc["exact"] == "1/20"
          and len(table.splitlines()) == 14 and parse_code == 2
          and "offset 5" in err and err.rstrip().endswith("^"))
    criterion(11, "CLI shapes run, verify exits 0, parse error exits 2 with position", ok,
              f"(exit codes {results}, parse {parse_code})")
    assert ok

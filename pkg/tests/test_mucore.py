import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given, strategies as st
from scipy import integrate

from zetareg.errors import DomainError
from zetareg.mucore import (
    IntegerExact,
    MuValue,
    NonIntegerZero,
    ZeroCertificate,
    delta,
    delta_binomial_form,
    delta_exact,
    lambda_,
    mu,
    mu_int_bernoulli,
    mu_int_closed,
    mu_int_zeta_sum,
    mu_series_truncated,
    reciprocity_map,
)
from zetareg.special import EvalPrecision

from oracles import mu_series_direct

# mpmath at 40 digits straight from the gamma-function form of the series
SERIES_REFERENCE = {
    0.25: {25: 0.002938075153770775557375, 50: 0.001231395831594644572478,
           100: 0.0005169237488943719998912, 200: 0.0002171692956146495580172},
    0.5: {25: 0.001527553376328887183599, 50: 0.0005359544605197223374629,
          100: 0.0001887721239841086172437, 200: 0.00006661537504393137473139},
    1.5: {25: -0.00005850204478092117220878, 50: -0.000009945546690056704765076,
          100: -0.000001724821437418251325069, 200: -3.020344460430137897141e-7},
    2.75: {25: 0.000001885671392110271093187, 50: 1.255079238272407386372e-7,
           100: 8.844219031610651724877e-9, 200: 6.403463940522598219607e-10},
}


def test_delta_examples():
    assert delta(2, 1) == pytest.approx(1 / 3, rel=1e-15)
    assert delta(1, 3) == 2.5
    quad, _ = integrate.quad(math.sqrt, 1, 2, epsabs=0, epsrel=1e-13)
    assert delta(0.5, 2) == pytest.approx(quad, rel=1e-13)
    assert delta(0.5, 2) == pytest.approx(1.2189514165, abs=1e-10)


def test_delta_rejects_logarithmic_case():
    with pytest.raises(DomainError):
        delta(-1, 3)
    with pytest.raises(DomainError):
        delta(-1.5, 1)


def test_delta_binomial_form_examples():
    assert delta_binomial_form(2, 1) == Fraction(1, 3)
    assert delta_binomial_form(3, 2) == Fraction(15, 4)
    assert delta_binomial_form(5, 7) == delta_exact(5, 7) == Fraction(7 ** 6 - 6 ** 6, 6)


def test_delta_forms_agree():
    for r in range(11):
        for n in range(1, 11):
            assert delta_binomial_form(r, n) == delta_exact(r, n)
            assert float(delta_exact(r, n)) == pytest.approx(delta(r, n), rel=1e-14)


def test_delta_telescopes():
    for r in range(11):
        running = Fraction(0)
        for N in range(1, 51):
            running += delta_binomial_form(r, N)
            assert running == Fraction(N ** (r + 1), r + 1)


@pytest.mark.parametrize("r,expected", [(0, Fraction(-1, 2)), (1, Fraction(1, 6)),
                                        (4, Fraction(-1, 30))])
def test_mu_zeta_sum_examples(r, expected):
    assert mu_int_zeta_sum(r) == expected


@pytest.mark.parametrize("r,expected", [(1, Fraction(1, 6)), (0, Fraction(-1, 2)),
                                        (10, Fraction(-1, 132))])
def test_mu_bernoulli_examples(r, expected):
    assert mu_int_bernoulli(r) == expected


@pytest.mark.parametrize("r,expected", [(0, Fraction(-1, 2)), (3, Fraction(1, 20)),
                                        (2, Fraction(-1, 12))])
def test_mu_closed_examples(r, expected):
    assert mu_int_closed(r) == expected


def test_routes_agree_exactly():
    for r in range(41):
        assert mu_int_zeta_sum(r) == mu_int_bernoulli(r) == mu_int_closed(r)


def test_closed_form_sign_and_magnitude():
    for r in range(41):
        v = mu_int_closed(r)
        assert abs(v) == Fraction(1, (r + 1) * (r + 2))
        assert (v > 0) == (r % 2 == 1)


@pytest.mark.parametrize("fn", [mu_int_zeta_sum, mu_int_bernoulli, mu_int_closed])
def test_integer_routes_reject_non_naturals(fn):
    with pytest.raises(DomainError):
        fn(-1)
    with pytest.raises(DomainError):
        fn(1.5)


def test_lambda_examples():
    assert lambda_(0) == 1.0
    assert lambda_(0.5) == pytest.approx(1 - 1 / (1.5 * math.pi), rel=1e-15)
    assert lambda_(-1) == 2.0
    assert lambda_(-1 + 1e-12) == pytest.approx(2.0, abs=1e-12)


def test_lambda_bounds_on_grid():
    values = [(lambda_(-10 + 20 * i / 10000), -10 + 20 * i / 10000) for i in range(10001)]
    lo = min(values)
    assert 0.7827 <= lo[0]
    assert max(v for v, _ in values) <= 2.0 + 1e-12


def test_lambda_minimum_location():
    # dense grid at step 1e-3 evaluated independently in mpmath
    grid = [mpmath.mpf(i) / 1000 for i in range(-10000, 10001)]
    ref = min(1 - mpmath.sinpi(r) / (mpmath.pi * (r + 1)) for r in grid if r != -1)
    assert float(ref) == pytest.approx(0.78277, abs=1e-4)
    for r in (0.430, -2.430):
        assert lambda_(r) == pytest.approx(float(ref), abs=1e-12)


def test_series_first_terms():
    # one term: Gamma(r+1) zeta(-r) / (1! Gamma(r+1)) = zeta(-r)
    assert mu_series_truncated(0.5, 1) == pytest.approx(float(mpmath.zeta(-0.5)), rel=1e-13)
    assert mu_series_truncated(0.5, 1) == pytest.approx(float(mu_series_direct(0.5, 1)), rel=1e-13)
    assert mu_series_truncated(0.5, 2) == pytest.approx(0.1572024022250421372051, rel=1e-13)


@pytest.mark.parametrize("r", sorted(SERIES_REFERENCE))
def test_series_matches_reference(r):
    for N, ref in SERIES_REFERENCE[r].items():
        assert abs(mu_series_truncated(r, N) - ref) <= 1e-8
        assert mu_series_truncated(r, N) == pytest.approx(ref, rel=1e-9)


@pytest.mark.parametrize("r", sorted(SERIES_REFERENCE))
def test_series_magnitude_non_increasing(r):
    mags = [abs(mu_series_truncated(r, N)) for N in (25, 50, 100, 200)]
    assert mags == sorted(mags, reverse=True)


def test_series_half_at_200_is_small():
    assert abs(mu_series_truncated(0.5, 200)) < 0.02


def test_series_domain_errors():
    with pytest.raises(DomainError):
        mu_series_truncated(2, 10)
    with pytest.raises(DomainError) as exc:
        mu_series_truncated(-1.5, 10)
    assert exc.value.code == "E_NONCONVERGENT"
    with pytest.raises(DomainError):
        mu_series_truncated(0.5, 11, EvalPrecision(max_terms=10))


def test_reciprocity_examples():
    arg, factor = reciprocity_map(0.5)
    assert arg == -2.5
    assert factor == pytest.approx(4 * math.sqrt(math.pi) / 3 / math.pi, rel=1e-14)
    arg, factor = reciprocity_map(-0.5)
    assert arg == -1.5
    assert factor == pytest.approx(2 * math.sqrt(math.pi) / math.pi, rel=1e-14)
    arg, factor = reciprocity_map(-2.5)
    assert arg == 0.5
    ref = mpmath.sinpi(-2.5) * mpmath.gamma(1.5) / mpmath.pi
    assert factor == pytest.approx(float(ref), rel=1e-14)
    assert factor == pytest.approx(-1 / (2 * math.sqrt(math.pi)), rel=1e-14)


@given(st.floats(min_value=-50, max_value=50))
def test_reciprocity_involution(r):
    # -r-2 must stay non-integer after rounding
    assume(abs(r - round(r)) > 1e-9)
    assert abs(reciprocity_map(reciprocity_map(r)[0])[0] - r) <= 1e-14 * max(1.0, abs(r))


def test_mu_integer_examples():
    for r, expected in [(3, Fraction(1, 20)), (0, Fraction(-1, 2)), (3.0, Fraction(1, 20))]:
        m = mu(r)
        assert m.is_integer_branch
        assert m.value == expected
        assert m.branch.routes_agree


def test_mu_noninteger_reports_zero_with_certificate():
    m = mu(0.5)
    assert isinstance(m.branch, NonIntegerZero)
    assert m.value == 0
    cert = m.branch.certificate
    assert cert.lambda_value == pytest.approx(0.7878, abs=1e-4)
    assert cert.truncation_N == 200
    assert cert.truncated_series_value == pytest.approx(SERIES_REFERENCE[0.5][200], abs=1e-8)
    assert cert.reciprocity_argument is None


def test_mu_below_minus_one_goes_through_reciprocity():
    m = mu(-2.5)
    cert = m.branch.certificate
    assert cert.reciprocity_argument == 0.5
    _, factor = reciprocity_map(0.5)
    assert cert.truncated_series_value == pytest.approx(factor * SERIES_REFERENCE[0.5][200], rel=1e-9)
    assert cert.lambda_value == pytest.approx(lambda_(-2.5))


def test_mu_errors():
    with pytest.raises(DomainError) as exc:
        mu(-2)
    assert exc.value.code == "E_MU_NEGATIVE_INTEGER"
    with pytest.raises(DomainError) as exc:
        mu(-1)
    assert exc.value.code == "E_MU_LOGARITHMIC"


def test_mu_value_invariants():
    good = IntegerExact(Fraction(1, 6), Fraction(1, 6), Fraction(1, 6), Fraction(1, 6))
    with pytest.raises(ValueError):
        MuValue(1.5, good)
    with pytest.raises(ValueError):
        MuValue(1, IntegerExact(Fraction(1, 6), Fraction(1, 6), Fraction(1, 7), Fraction(1, 6)))
    cert = ZeroCertificate(0.8, 10, 0.0)
    with pytest.raises(ValueError):
        MuValue(2, NonIntegerZero(cert))
    with pytest.raises(ValueError):
        ZeroCertificate(0.5, 10, 0.0)
    with pytest.raises(ValueError):
        ZeroCertificate(0.9, 0, 0.0)

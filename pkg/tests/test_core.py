import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from qgammalab.core import (
    QParam,
    SeriesPolicy,
    log1mexp,
    log_q_pochhammer_inf,
    q_bracket,
    q_exp_E,
    q_exp_E_series,
    q_factorial,
    q_pochhammer,
    q_pochhammer_inf,
)
from qgammalab.errors import ConvergenceError, QDomainError

qs = st.floats(min_value=0.01, max_value=0.99)


def brute_pochhammer_inf(a, q):
    """Multiply factors until they equal 1 in working precision."""
    out, qi = 1.0, 1.0
    while True:
        factor = 1.0 - a * qi
        if factor == 1.0:
            return out
        out *= factor
        qi *= q


@pytest.mark.parametrize("bad", [0.0, 1.0, -0.2, 1.5, math.nan, math.inf])
def test_qparam_rejects_out_of_range(bad):
    with pytest.raises(QDomainError):
        QParam(bad)


def test_qparam_derived_values():
    qp = QParam(0.3)
    assert qp.ln_q == math.log(0.3) and qp.ln_q < 0
    assert qp.one_minus_q == pytest.approx(0.7, rel=1e-16)


def test_series_policy_validation():
    with pytest.raises(ValueError):
        SeriesPolicy(rel_tol=0)
    with pytest.raises(ValueError):
        SeriesPolicy(max_terms=0)


@pytest.mark.parametrize("x,q,expected", [(1, 0.5, 1.0), (2, 0.5, 1.5), (0.5, 0.25, 2 / 3)])
def test_q_bracket_examples(x, q, expected):
    assert q_bracket(x, q) == pytest.approx(expected, rel=1e-15)


def test_q_bracket_zero_and_domain():
    assert q_bracket(0.0, 0.4) == 0.0
    assert q_bracket(-1.0, 0.5) == pytest.approx(-2.0, rel=1e-15)
    with pytest.raises(QDomainError):
        q_bracket(math.inf, 0.5)


@given(x=st.floats(min_value=1e-3, max_value=50), q=qs)
def test_q_bracket_recurrence(x, q):
    lhs = q_bracket(x + 1, q)
    assert lhs == pytest.approx(1 + q * q_bracket(x, q), rel=8e-15, abs=1e-300)


@given(n=st.integers(min_value=0, max_value=60), q=qs)
def test_q_bracket_integer_is_geometric_sum(n, q):
    assert q_bracket(n, q) == pytest.approx(math.fsum(q ** k for k in range(n)), rel=1e-13, abs=0)


def test_q_bracket_classical_limit():
    q = 1 - 1e-8
    for x in (0.5, 1.0, 3.0, 10.0):
        assert abs(q_bracket(x, q) - x) <= 1e-6 * x


@given(q=qs, x=st.floats(min_value=-5, max_value=20), dx=st.floats(min_value=1e-6, max_value=5))
def test_q_bracket_strictly_increasing(q, x, dx):
    # the step q^x (1 - q^dx) must be resolvable next to [x]_q ~ 1/(1-q)
    assume(q ** x * -math.expm1(dx * math.log(q)) > 1e-13)
    assert q_bracket(x + dx, q) > q_bracket(x, q)


@pytest.mark.parametrize("a,q,n,expected", [(0.5, 0.5, 0, 1.0), (0.5, 0.5, 2, 0.375),
                                            (1.0, 0.9, 3, 0.0)])
def test_q_pochhammer_examples(a, q, n, expected):
    assert q_pochhammer(a, q, n) == pytest.approx(expected, abs=1e-16)


def test_q_pochhammer_inf_examples():
    assert q_pochhammer_inf(0.0, 0.3) == 1.0
    assert q_pochhammer_inf(1.0, 0.5) == 0.0
    # brute-force oracle, cross-checked with mpmath.qp: 0.28878809508660242127889972
    oracle = brute_pochhammer_inf(0.5, 0.5)
    assert oracle == pytest.approx(0.28878809508660242127889972, rel=1e-14)
    assert q_pochhammer_inf(0.5, 0.5) == pytest.approx(oracle, rel=1e-13)


@pytest.mark.parametrize("a", [-3.0, -0.7, 0.2, 0.9, 1.7, 5.0])
@pytest.mark.parametrize("q", [0.2, 0.6, 0.9])
def test_q_pochhammer_inf_matches_brute_force(a, q):
    assert q_pochhammer_inf(a, q) == pytest.approx(brute_pochhammer_inf(a, q), rel=2e-12)


def test_q_pochhammer_inf_near_one_has_no_underflow():
    # ln (q; q)_inf ~ -pi^2/(6t) + ln(2 pi / t)/2 + t/24 with t = -ln q, far below
    # the smallest double, but fine in log form
    q = 0.999
    sign, log_abs, _, _ = log_q_pochhammer_inf(q, q)
    t = -math.log(q)
    expected_log = -math.pi ** 2 / (6 * t) + 0.5 * math.log(2 * math.pi / t) + t / 24
    assert sign == 1
    assert log_abs == pytest.approx(expected_log, rel=1e-12)
    assert q_pochhammer_inf(q, q) == 0.0


def test_q_pochhammer_inf_reports_nonconvergence():
    with pytest.raises(ConvergenceError):
        q_pochhammer_inf(0.5, 0.9, SeriesPolicy(max_terms=10))


@pytest.mark.parametrize("n,q,expected", [(0, 0.5, 1.0), (3, 0.5, 2.625), (2, 0.9, 1.9)])
def test_q_factorial_examples(n, q, expected):
    assert q_factorial(n, q) == pytest.approx(expected, rel=1e-15)


@given(n=st.integers(min_value=0, max_value=40), q=qs)
def test_q_factorial_pochhammer_identity(n, q):
    assert q_factorial(n, q) * (1 - q) ** n == pytest.approx(q_pochhammer(q, q, n), rel=1e-14)


def test_q_exp_examples():
    assert q_exp_E(0.0, 0.5) == 1.0
    assert q_exp_E(-1 / (1 - 0.5), 0.5) == 0.0
    assert q_exp_E(1.0, 0.5) == pytest.approx(q_exp_E_series(1.0, 0.5), rel=1e-13)


@pytest.mark.parametrize("q", [0.1, 0.5, 0.9])
def test_q_exp_series_equals_product(q):
    for i in range(51):
        t = 5 * i / 50
        assert q_exp_E(t, q) == pytest.approx(q_exp_E_series(t, q), rel=1e-10)


def test_q_exp_tends_to_exp():
    assert q_exp_E(-1.0, 1 - 1e-5) == pytest.approx(math.exp(-1.0), rel=1e-4)


def test_log1mexp_both_regimes():
    assert log1mexp(-1e-20) == pytest.approx(math.log(1e-20), rel=1e-12)
    assert log1mexp(-700.0) == pytest.approx(-math.exp(-700.0), rel=1e-12)

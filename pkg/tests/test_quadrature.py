import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgammalab.errors import DivergenceWarning, EvaluationError
from qgammalab.lab import holder_gamma_instance, run_holder_trials
from qgammalab.quadrature import (
    holder_check,
    jackson_integral_0a,
    jackson_integral_0inf,
    jackson_integral_ab,
)
from qgammalab.special import qgamma, qgamma_integrand


def test_0a_examples():
    r = jackson_integral_0a(lambda t: 1.0, 3.0, 0.5)
    assert r.converged and r.value == pytest.approx(3.0, rel=1e-13)
    assert jackson_integral_0a(lambda t: t, 1.0, 0.5).value == pytest.approx(2 / 3, rel=1e-13)
    r = jackson_integral_0a(qgamma_integrand(1.0, 0.5), 2.0, 0.5)
    assert r.value == pytest.approx(qgamma(1.0, 0.5), rel=1e-12)
    assert r.tail_estimate <= 1e-13 * abs(r.value)


@pytest.mark.parametrize("q", [0.3, 0.5, 0.8])
@pytest.mark.parametrize("x", [0.5, 1.0, 2.5, 4.0])
def test_0a_gamma_integral_matches_product(q, x):
    r = jackson_integral_0a(qgamma_integrand(x, q), 1 / (1 - q), q)
    assert r.value == pytest.approx(qgamma(x, q), rel=1e-11)


def test_0a_reports_bad_sample():
    with pytest.raises(EvaluationError) as info:
        jackson_integral_0a(lambda t: 1.0 / (t - 0.25), 1.0, 0.5)
    assert info.value.index == 2


def test_0inf_examples():
    r = jackson_integral_0inf(lambda t: 0.0, 0.5)
    assert r.value == 0.0 and r.converged
    r = jackson_integral_0inf(qgamma_integrand(2.0, 0.5), 0.5)
    assert r.converged and r.value == pytest.approx(1.0, rel=1e-13)
    with pytest.warns(DivergenceWarning):
        r = jackson_integral_0inf(lambda t: t, 0.5, n_min=-60, n_max=200)
    assert not r.converged


@pytest.mark.parametrize("q", [0.3, 0.7])
@pytest.mark.parametrize("x", [0.5, 1.0, 2.5])
def test_two_ranges_agree(q, x):
    f = qgamma_integrand(x, q)
    finite = jackson_integral_0a(f, 1 / (1 - q), q)
    with warnings.catch_warnings():
        warnings.simplefilter("error", DivergenceWarning)
        bilateral = jackson_integral_0inf(f, q, scale=1 / (1 - q))
    assert bilateral.converged
    assert bilateral.value == pytest.approx(finite.value, rel=1e-13)


def test_ab_examples():
    f = lambda t: t  # noqa: E731
    assert jackson_integral_ab(f, 0.7, 0.7, 0.5).value == 0.0
    r = jackson_integral_ab(lambda t: 1.0, 1.0, 3.0, 0.5)
    assert r.value == pytest.approx(2.0, rel=1e-13)
    assert r.terms_used == (jackson_integral_0a(lambda t: 1.0, 3.0, 0.5).terms_used
                            + jackson_integral_0a(lambda t: 1.0, 1.0, 0.5).terms_used)
    assert jackson_integral_ab(f, 0.0, 1.0, 0.5).value == pytest.approx(2 / 3, rel=1e-13)


@settings(max_examples=40, deadline=None)
@given(alpha=st.floats(-5, 5), beta=st.floats(-5, 5), p=st.floats(0, 3),
       q=st.floats(0.1, 0.9), a=st.floats(0.1, 5))
def test_linearity(alpha, beta, p, q, a):
    f = lambda t: math.exp(-t)  # noqa: E731
    g = lambda t: t ** p  # noqa: E731
    combined = jackson_integral_0a(lambda t: alpha * f(t) + beta * g(t), a, q).value
    separate = alpha * jackson_integral_0a(f, a, q).value + beta * jackson_integral_0a(g, a, q).value
    scale = abs(alpha) * jackson_integral_0a(f, a, q).value + abs(beta) * jackson_integral_0a(g, a, q).value
    assert abs(combined - separate) <= 1e-12 * scale


def test_holder_equality_case():
    r = holder_check(lambda t: 1.0, lambda t: 1.0, 2.0, 0.5, 1.0)
    assert r.lhs == pytest.approx(1.0, rel=1e-13)
    assert r.rhs == pytest.approx(1.0, rel=1e-13)
    assert abs(r.margin) <= 1e-14


def test_holder_gamma_step_with_split_exponentials():
    r = holder_gamma_instance(0.5, 0.5, 1.5, weighted=False)
    assert r.passed and r.margin >= 0


def test_holder_gamma_step_weighted_reproduces_gamma_bound():
    q, s, x = 0.5, 0.5, 1.5
    r = holder_gamma_instance(q, s, x, weighted=True)
    assert r.lhs == pytest.approx(qgamma(x + s, q), rel=1e-12)
    assert r.rhs == pytest.approx(qgamma(x, q) ** (1 - s) * qgamma(x + 1, q) ** s, rel=1e-12)
    assert r.margin >= 0


def brute_holder(f, g, a_exp, q, upper, n=400):
    """Direct weighted sums over the first n lattice points."""
    t = upper * q ** np.arange(n)
    w = (1 - q) * t
    fv = np.array([f(v) for v in t])
    gv = np.array([g(v) for v in t])
    b_exp = a_exp / (a_exp - 1)
    lhs = np.sum(w * fv * gv)
    rhs = np.sum(w * fv ** a_exp) ** (1 / a_exp) * np.sum(w * gv ** b_exp) ** (1 / b_exp)
    return lhs, rhs


def test_random_holder_trials():
    rep = run_holder_trials(n_trials=50, seed=7)
    assert len(rep.trials) == 50
    assert rep.passed and rep.min_rel_margin >= -1e-10


def test_holder_check_matches_brute_force():
    from qgammalab.lab import random_positive_function
    rng = np.random.default_rng(3)
    for a_exp in (1.5, 2.0, 3.0):
        f = random_positive_function(rng, 2.0)
        g = random_positive_function(rng, 2.0)
        r = holder_check(f, g, a_exp, 0.6, 2.0)
        lhs, rhs = brute_holder(f, g, a_exp, 0.6, 2.0)
        assert r.lhs == pytest.approx(lhs, rel=1e-12)
        assert r.rhs == pytest.approx(rhs, rel=1e-12)
        assert rhs >= lhs

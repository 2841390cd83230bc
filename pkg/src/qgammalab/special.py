"""q-Gamma, q-psi and q-pi, each with two independent evaluation routes, plus
classical Gamma/psi references used as q -> 1 oracles.

Gamma_q routes
  product   (1-q)^(1-x) prod_n (1 - q^(n+1)) / (1 - q^(n+x))
  integral  Jackson sum over the lattice q^n/(1-q) of t^(x-1) E_q^(-qt), which
            collapses to (1-q)^(1-x) sum_n q^(nx) (q^(n+1); q)_inf

psi_q routes
  direct    -ln(1-q) + ln q sum_{n>=0} q^(n+x) / (1 - q^(n+x))
  lambert   -ln(1-q) + ln q sum_{k>=1} q^(kx) / (1 - q^k)
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    CHUNK,
    DEFAULT_POLICY,
    QLike,
    QParam,
    SeriesPolicy,
    SeriesResult,
    _check_terms,
    as_qparam,
    geometric_cutoff,
    log1mexp,
    q_exp_E,
)
from .errors import QDomainError, QOverflowError

# Past this the product needs ~ln(tol)/(1-q) factors per call.
Q_MAX = 1.0 - 1e-6

_LOG_DBL_MAX = 709.78


class QGammaBackend(str, enum.Enum):
    PRODUCT = "product"
    JACKSON_INTEGRAL = "integral"


class QPsiBackend(str, enum.Enum):
    DIRECT_SERIES = "direct"
    LAMBERT_SERIES = "lambert"


def _qp(q: QLike) -> QParam:
    qp = as_qparam(q)
    if qp.q > Q_MAX:
        raise QDomainError(f"q = {qp.q!r} is above the supported maximum 1 - 1e-6")
    return qp


def _positive(x, name="x") -> float:
    x = float(x)
    if not (x > 0.0 and math.isfinite(x)):
        raise QDomainError(f"{name} must be positive and finite, got {x!r}")
    return x


def _chunked_fsum(fn, n_terms: int) -> float:
    pieces = []
    for start in range(0, n_terms, CHUNK):
        n = np.arange(start, min(n_terms, start + CHUNK), dtype=float)
        pieces.append(math.fsum(fn(n)))
    return math.fsum(pieces)


def _product_terms(qp: QParam, policy: SeriesPolicy) -> int:
    n = max(1, geometric_cutoff(policy.rel_tol * qp.one_minus_q, qp.ln_q))
    _check_terms(n, policy, "q-product")
    return n


def log_ratio_sum(u0: float, delta: float, q: QLike,
                  policy: SeriesPolicy = DEFAULT_POLICY) -> SeriesResult:
    """sum_{n>=0} [ln(1 - q^(u0+n+delta)) - ln(1 - q^(u0+n))] for u0 > 0.

    Each term is formed without cancellation, so the sum keeps full relative
    accuracy even when it is far below 1. A first-order tail correction is
    added after truncation.
    """
    qp = _qp(q)
    lq = qp.ln_q
    c = math.expm1(delta * lq)
    n_terms = _product_terms(qp, policy)

    def terms(n):
        y = (u0 + n) * lq
        return np.log1p(-c * np.exp(y) / -np.expm1(y))

    tail = -c * math.exp((u0 + n_terms) * lq) / qp.one_minus_q
    value = _chunked_fsum(terms, n_terms) + tail
    return SeriesResult(value, n_terms, True, abs(tail))


def _log_qgamma_product(x: float, qp: QParam, policy: SeriesPolicy) -> SeriesResult:
    s = log_ratio_sum(x, 1.0 - x, qp, policy)
    value = (1.0 - x) * math.log1p(-qp.q) + s.value
    return SeriesResult(value, s.terms_used, True, s.tail_estimate)


def _log_qgamma_integral(x: float, qp: QParam, policy: SeriesPolicy) -> SeriesResult:
    lq = qp.ln_q
    xl = x * lq
    k_tail = max(1, geometric_cutoff(policy.rel_tol * qp.one_minus_q, lq))
    # index where (q^(n+1); q)_inf has climbed to about 1/2: a cheap lower bound
    # on the whole sum, used to size the outer truncation
    n0 = geometric_cutoff(0.5 * qp.one_minus_q, lq)
    k = np.arange(n0 + 1, n0 + 1 + k_tail, dtype=float)
    log_lower = n0 * xl + math.fsum(log1mexp(k * lq))
    n_outer = 1 + max(n0, math.ceil((math.log(policy.rel_tol) + log1mexp(xl) + log_lower) / xl))
    m = n_outer + k_tail
    _check_terms(m, policy, "q-Gamma lattice sum")

    logs = log1mexp(np.arange(1, m + 1, dtype=float) * lq)
    # suffix[n] = ln (q^(n+1); q)_inf, accumulated from the small end
    suffix = np.cumsum(logs[::-1])[::-1][:n_outer]
    e = np.arange(n_outer, dtype=float) * xl + suffix
    shift = float(e.max())
    total = math.fsum(np.exp(e - shift))
    value = (1.0 - x) * math.log1p(-qp.q) + shift + math.log(total)
    tail = math.exp(n_outer * xl - log1mexp(xl) - shift) / total
    return SeriesResult(value, m, True, tail)


def log_qgamma(x: float, q: QLike, backend: QGammaBackend = QGammaBackend.PRODUCT,
               policy: SeriesPolicy = DEFAULT_POLICY, full_output: bool = False):
    """Natural log of Gamma_q(x) for x > 0."""
    x = _positive(x)
    qp = _qp(q)
    backend = QGammaBackend(backend)
    if backend is QGammaBackend.PRODUCT:
        res = _log_qgamma_product(x, qp, policy)
    else:
        res = _log_qgamma_integral(x, qp, policy)
    return res if full_output else res.value


def qgamma(x: float, q: QLike, backend: QGammaBackend = QGammaBackend.PRODUCT,
           policy: SeriesPolicy = DEFAULT_POLICY, full_output: bool = False):
    res = log_qgamma(x, q, backend, policy, full_output=True)
    if res.value > _LOG_DBL_MAX:
        raise QOverflowError(f"Gamma_q({x}) overflows: log value {res.value:.6g}")
    value = math.exp(res.value)
    if full_output:
        return SeriesResult(value, res.terms_used, res.converged, value * res.tail_estimate)
    return value


def log_qgamma_ratio(x: float, a: float, b: float, q: QLike,
                     policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """ln Gamma_q(x+a) - ln Gamma_q(x+b), without forming either log-gamma."""
    x = _positive(x)
    qp = _qp(q)
    if not (x + a > 0 and x + b > 0):
        raise QDomainError("both shifted arguments must be positive")
    s = log_ratio_sum(x + a, b - a, qp, policy)
    return (b - a) * math.log1p(-qp.q) + s.value


def qgamma_integrand(x: float, q: QLike, policy: SeriesPolicy = DEFAULT_POLICY):
    """t -> t^(x-1) E_q^(-qt), the Jackson integrand whose integral is Gamma_q(x)."""
    qp = _qp(q)

    def f(t):
        e = q_exp_E(-qp.q * t, qp, policy)
        return 0.0 if e == 0.0 else t ** (x - 1.0) * e

    return f


def _lambert_ratio(u, lq):
    return np.exp(u * lq) / -np.expm1(u * lq)


def qpsi_series_sum(x: float, q: QLike, backend: QPsiBackend = QPsiBackend.DIRECT_SERIES,
                    policy: SeriesPolicy = DEFAULT_POLICY) -> SeriesResult:
    """The positive sum S in psi_q(x) = -ln(1-q) + ln(q) S."""
    x = _positive(x)
    qp = _qp(q)
    lq = qp.ln_q
    if QPsiBackend(backend) is QPsiBackend.DIRECT_SERIES:
        n_terms = _product_terms(qp, policy)
        value = _chunked_fsum(lambda n: _lambert_ratio(n + x, lq), n_terms)
        tail = math.exp((n_terms + x) * lq) / (qp.one_minus_q * -math.expm1((n_terms + x) * lq))
    else:
        xl = x * lq
        n_terms = 1 + max(1, geometric_cutoff(policy.rel_tol * -math.expm1(xl), xl))
        _check_terms(n_terms, policy, "Lambert series")
        value = _chunked_fsum(lambda n: np.exp((n + 1) * xl) / -np.expm1((n + 1) * lq), n_terms)
        tail = math.exp((n_terms + 1) * xl) / (-math.expm1(xl) * qp.one_minus_q)
    return SeriesResult(value, n_terms, True, tail)


def qpsi(x: float, q: QLike, backend: QPsiBackend = QPsiBackend.DIRECT_SERIES,
         policy: SeriesPolicy = DEFAULT_POLICY, full_output: bool = False):
    """psi_q(x) = d/dx ln Gamma_q(x)."""
    qp = _qp(q)
    s = qpsi_series_sum(x, qp, backend, policy)
    value = -math.log1p(-qp.q) + qp.ln_q * s.value
    if full_output:
        return SeriesResult(value, s.terms_used, s.converged, abs(qp.ln_q) * s.tail_estimate)
    return value


def qpsi_difference(x1: float, x2: float, q: QLike,
                    policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """psi_q(x1) - psi_q(x2) summed termwise, keeping relative accuracy as both -> const."""
    x1, x2 = _positive(x1, "x1"), _positive(x2, "x2")
    qp = _qp(q)
    lq = qp.ln_q
    c = math.expm1((x1 - x2) * lq)
    n_terms = _product_terms(qp, policy)

    def terms(n):
        u = (n + x2) * lq
        return np.exp(u) * c / (np.expm1(u) * np.expm1(u + (x1 - x2) * lq))

    return lq * _chunked_fsum(terms, n_terms)


def psi_exp_moment(x: float, q: QLike) -> float:
    """-q^x ln q / (1 - q^x), the Laplace moment of the q-psi measure."""
    x = _positive(x)
    qp = _qp(q)
    return -qp.ln_q * math.exp(x * qp.ln_q) / -math.expm1(x * qp.ln_q)


def psi_exp_moment_sum(x: float, q: QLike, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """Same moment as the discrete sum (-ln q) sum_{k>=1} q^(kx)."""
    x = _positive(x)
    qp = _qp(q)
    xl = x * qp.ln_q
    n_terms = 1 + geometric_cutoff(policy.rel_tol * -math.expm1(xl), xl)
    _check_terms(n_terms, policy, "moment sum")
    return -qp.ln_q * _chunked_fsum(lambda n: np.exp((n + 1) * xl), n_terms)


def pi_q(q: QLike, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """q-analogue of pi, defined so that Gamma_q(1/2) = sqrt(pi_q)."""
    return math.exp(2.0 * log_qgamma(0.5, q, QGammaBackend.PRODUCT, policy))


@dataclass(frozen=True)
class PiQVariant:
    value: float
    operational: float
    ratio: float


def pi_q_formula_variant(q: QLike, policy: SeriesPolicy = DEFAULT_POLICY) -> PiQVariant:
    """q^(1/4) Gamma_{q^2}(1/2)^2, reading [-1/2]_{q^2}! as Gamma_{q^2}(1/2).

    Diagnostic only; it does not coincide with Gamma_q(1/2)^2.
    """
    qp = _qp(q)
    value = qp.q ** 0.25 * math.exp(2.0 * log_qgamma(0.5, qp.q * qp.q, policy=policy))
    operational = pi_q(qp, policy)
    return PiQVariant(value, operational, value / operational)


def classical_log_gamma(x: float) -> float:
    return math.lgamma(_positive(x))


def classical_gamma(x: float) -> float:
    return math.gamma(_positive(x))


_PSI_ASYMPTOTIC = (1 / 12, -1 / 120, 1 / 252, -1 / 240, 1 / 132, -691 / 32760, 1 / 12)


def classical_psi(x: float) -> float:
    """Digamma via recurrence up to x >= 10 and the Bernoulli asymptotic series."""
    x = _positive(x)
    shift = 0.0
    while x < 10.0:
        shift -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    for c in reversed(_PSI_ASYMPTOTIC):
        series = series * inv2 + c
    return shift + math.log(x) - 0.5 / x - series * inv2

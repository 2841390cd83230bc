"""Jackson q-integrals on [0, a], [0, inf) and [a, b], and a Hoelder check.

Integrands are arbitrary scalar callables sampled lazily on the geometric
lattice; nothing is cached between calls.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

from .core import DEFAULT_POLICY, QLike, SeriesPolicy, SeriesResult, as_qparam, geometric_cutoff
from .errors import ConvergenceError, DivergenceWarning, EvaluationError, QDomainError

QIntegralResult = SeriesResult

Integrand = Callable[[float], float]


def _sample(f: Integrand, t: float, n: int) -> float:
    try:
        v = float(f(t))
    except (OverflowError, ZeroDivisionError) as exc:
        raise EvaluationError(f"integrand failed at lattice index n={n} (t={t!r}): {exc}",
                              index=n, point=t) from exc
    if not math.isfinite(v):
        raise EvaluationError(f"integrand is not finite at lattice index n={n} (t={t!r})",
                              index=n, point=t)
    return v


def _tail_from_ratio(last: float, prev: float, floor_rate: float) -> float:
    """Geometric tail bound after |last| given the previous term."""
    last, prev = abs(last), abs(prev)
    if last == 0.0:
        return 0.0
    r = floor_rate if prev == 0.0 else max(floor_rate, last / prev)
    if r >= 1.0:
        return math.inf
    return last * r / (1.0 - r)


def jackson_integral_0a(f: Integrand, a: float, q: QLike,
                        policy: SeriesPolicy = DEFAULT_POLICY) -> QIntegralResult:
    """(1 - q) a sum_{n>=0} f(a q^n) q^n.

    Sampling runs at least until q^n < rel_tol, then stops once the geometric
    tail bound (ratio at least q) stays below rel_tol*|sum| for two terms.
    """
    qp = as_qparam(q)
    a = float(a)
    if not (a > 0.0 and math.isfinite(a)):
        raise QDomainError(f"upper limit must be positive and finite, got {a!r}")
    min_terms = geometric_cutoff(policy.rel_tol, qp.ln_q)
    terms = []
    running = 0.0
    prev = 0.0
    settled = 0
    tail = math.inf
    for n in range(policy.max_terms):
        w = qp.q ** n
        term = _sample(f, a * w, n) * w
        terms.append(term)
        running += term
        tail = _tail_from_ratio(term, prev, qp.q) if n else math.inf
        prev = term
        small = abs(running) < policy.underflow_floor and tail < policy.underflow_floor
        if tail <= policy.rel_tol * abs(running) or small:
            settled += 1
        else:
            settled = 0
        if n + 1 >= min_terms and settled >= 2:
            scale = qp.one_minus_q * a
            return QIntegralResult(scale * math.fsum(terms), n + 1, True, scale * tail)
    scale = qp.one_minus_q * a
    raise ConvergenceError("Jackson integral on [0, a] did not converge",
                           partial=scale * math.fsum(terms), terms_used=len(terms))


def jackson_integral_0inf(f: Integrand, q: QLike, policy: SeriesPolicy = DEFAULT_POLICY,
                          n_min: Optional[int] = None, n_max: Optional[int] = None,
                          scale: float = 1.0) -> QIntegralResult:
    """(1 - q) sum_{n=n_min}^{n_max} f(c q^n) c q^n over the lattice {c q^n}.

    With the default ``c = 1`` this is the bilateral Jackson integral on
    [0, inf). ``c = 1/(1 - q)`` gives the lattice whose top is [inf]_q.
    If ``n_max`` is omitted the window is extended at the small-t end until
    its tail settles. Both ends are monitored; a growing end triggers a
    DivergenceWarning and the result is reported as not converged.
    """
    qp = as_qparam(q)
    if not (scale > 0.0 and math.isfinite(scale)):
        raise QDomainError(f"lattice scale must be positive, got {scale!r}")
    extend = n_max is None
    if extend:
        n_max = geometric_cutoff(policy.rel_tol, qp.ln_q) + 1
    if n_min is None:
        floor = policy.underflow_floor if policy.underflow_floor > 0 else 1e-300
        n_min = -math.ceil(math.log(floor) / qp.ln_q)
    if n_min >= n_max:
        raise QDomainError("need n_min < n_max")

    def term(n):
        w = scale * math.exp(n * qp.ln_q)
        return _sample(f, w, n) * w

    terms = [term(n) for n in range(n_min, n_max + 1)]
    upper_tail = _tail_from_ratio(terms[-1], terms[-2], 0.0)
    # without an explicit n_max, keep sampling the small end until its tail settles
    while extend and upper_tail > policy.rel_tol * abs(math.fsum(terms)) \
            and upper_tail > policy.underflow_floor:
        if len(terms) >= policy.max_terms:
            raise ConvergenceError("bilateral Jackson sum did not settle at its small end",
                                   partial=qp.one_minus_q * math.fsum(terms),
                                   terms_used=len(terms))
        n_max += 1
        terms.append(term(n_max))
        upper_tail = _tail_from_ratio(terms[-1], terms[-2], 0.0)
    if len(terms) > policy.max_terms:
        raise ConvergenceError("bilateral window exceeds max_terms", terms_used=len(terms))

    total = math.fsum(terms)
    lower_tail = _tail_from_ratio(terms[0], terms[1], 0.0)
    tail = upper_tail + lower_tail
    limit = max(policy.rel_tol * abs(total), policy.underflow_floor)
    if math.isinf(upper_tail) or math.isinf(lower_tail):
        end = "upper" if math.isinf(lower_tail) else "lower"
        warnings.warn(f"bilateral q-sum is growing toward its {end} end; the integral "
                      "does not appear to converge absolutely", DivergenceWarning, stacklevel=2)
    converged = upper_tail <= limit and lower_tail <= limit
    return QIntegralResult(qp.one_minus_q * total, len(terms), converged,
                           qp.one_minus_q * tail)


def jackson_integral_ab(f: Integrand, a: float, b: float, q: QLike,
                        policy: SeriesPolicy = DEFAULT_POLICY) -> QIntegralResult:
    """Integral on [a, b] as the difference of the [0, b] and [0, a] integrals."""
    if a < 0 or b < 0:
        raise QDomainError("Jackson integral on [a, b] needs a, b >= 0")
    zero = QIntegralResult(0.0, 0, True, 0.0)
    hi = jackson_integral_0a(f, b, q, policy) if b > 0 else zero
    lo = jackson_integral_0a(f, a, q, policy) if a > 0 else zero
    return QIntegralResult(hi.value - lo.value, hi.terms_used + lo.terms_used,
                           hi.converged and lo.converged,
                           hi.tail_estimate + lo.tail_estimate)


@dataclass(frozen=True)
class HolderResult:
    lhs: float
    rhs: float
    margin: float
    slack: float
    a_exp: float
    b_exp: float

    @property
    def passed(self) -> bool:
        return self.margin >= -self.slack


HOLDER_SLACK = 1e-10


def holder_check(f: Integrand, g: Integrand, a_exp: float, q: QLike, upper: float,
                 policy: SeriesPolicy = DEFAULT_POLICY) -> HolderResult:
    """Compare int fg with (int f^a)^(1/a) (int g^b)^(1/b) on [0, upper].

    f and g must be non-negative on the lattice; the margin is rhs - lhs and
    the slack is relative to rhs.
    """
    if not a_exp > 1.0:
        raise QDomainError(f"Hoelder exponent must exceed 1, got {a_exp!r}")
    b_exp = a_exp / (a_exp - 1.0)
    lhs = jackson_integral_0a(lambda t: f(t) * g(t), upper, q, policy).value
    fa = jackson_integral_0a(lambda t: f(t) ** a_exp, upper, q, policy).value
    gb = jackson_integral_0a(lambda t: g(t) ** b_exp, upper, q, policy).value
    rhs = fa ** (1.0 / a_exp) * gb ** (1.0 / b_exp)
    return HolderResult(lhs, rhs, rhs - lhs, HOLDER_SLACK * abs(rhs), a_exp, b_exp)

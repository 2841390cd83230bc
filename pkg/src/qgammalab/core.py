"""Building blocks of q-calculus: q-brackets, q-Pochhammer symbols, q-factorials
and the q-exponential E_q.

Infinite products are accumulated in the log domain. Scalars are plain floats;
numpy is used only to vectorise the per-factor work of long products.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import ConvergenceError, QDomainError, QOverflowError

# Largest block of factors materialised at once by the vectorised kernels.
CHUNK = 1 << 20


@dataclass(frozen=True)
class QParam:
    """Deformation parameter q in (0, 1) with its commonly used derived values."""

    q: float
    ln_q: float = field(init=False, repr=False)
    one_minus_q: float = field(init=False, repr=False)

    def __post_init__(self):
        q = self.q
        if isinstance(q, bool) or not isinstance(q, (int, float, np.floating, np.integer)):
            raise QDomainError(f"q must be a real number, got {q!r}")
        q = float(q)
        if not math.isfinite(q) or not 0.0 < q < 1.0:
            raise QDomainError(f"q must lie in the open interval (0, 1), got {q!r}")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "ln_q", math.log(q))
        object.__setattr__(self, "one_minus_q", 1.0 - q)


QLike = Union[QParam, float]


def as_qparam(q: QLike) -> QParam:
    return q if isinstance(q, QParam) else QParam(q)


@dataclass(frozen=True)
class SeriesPolicy:
    """Truncation controls shared by every series, product and q-integral."""

    rel_tol: float = 1e-13
    max_terms: int = 10_000_000
    underflow_floor: float = 1e-300

    def __post_init__(self):
        if not (self.rel_tol > 0.0 and math.isfinite(self.rel_tol)):
            raise ValueError(f"rel_tol must be positive, got {self.rel_tol!r}")
        if int(self.max_terms) != self.max_terms or self.max_terms < 1:
            raise ValueError(f"max_terms must be a positive integer, got {self.max_terms!r}")
        if not self.underflow_floor >= 0.0:
            raise ValueError("underflow_floor must be non-negative")


DEFAULT_POLICY = SeriesPolicy()


@dataclass(frozen=True)
class SeriesResult:
    """Value of a truncated sum or product together with its diagnostics."""

    value: float
    terms_used: int
    converged: bool
    tail_estimate: float


def log1mexp(y):
    """ln(1 - exp(y)) for y < 0, accurate at both ends of the range."""
    y = np.asarray(y, dtype=float)
    out = np.empty_like(y)
    near = y > -math.log(2.0)
    out[near] = np.log(-np.expm1(y[near]))
    out[~near] = np.log1p(-np.exp(y[~near]))
    return out if out.ndim else float(out)


def geometric_cutoff(ratio: float, ln_rate: float) -> int:
    """Smallest n >= 0 with rate**n <= ratio, where ln_rate = ln(rate) < 0."""
    if ratio >= 1.0:
        return 0
    if ratio <= 0.0:
        raise ValueError("cutoff ratio must be positive")
    return max(0, math.ceil(math.log(ratio) / ln_rate))


def _check_terms(needed: int, policy: SeriesPolicy, what: str):
    if needed > policy.max_terms:
        raise ConvergenceError(
            f"{what} needs {needed} terms, more than max_terms={policy.max_terms}",
            terms_used=policy.max_terms,
        )


def q_bracket(x: float, q: QLike) -> float:
    """The q-number [x]_q = (1 - q^x)/(1 - q)."""
    qp = as_qparam(q)
    x = float(x)
    if not math.isfinite(x):
        raise QDomainError(f"x must be finite, got {x!r}")
    return -math.expm1(x * qp.ln_q) / qp.one_minus_q


def log_q_bracket(x: float, q: QLike) -> float:
    """ln [x]_q for x > 0."""
    qp = as_qparam(q)
    if not x > 0:
        raise QDomainError(f"ln [x]_q needs x > 0, got {x!r}")
    return log1mexp(x * qp.ln_q) - math.log1p(-qp.q)


def q_pochhammer(a: float, q: QLike, n: int) -> float:
    """Finite q-Pochhammer symbol (a; q)_n."""
    qp = as_qparam(q)
    if int(n) != n or n < 0:
        raise QDomainError(f"n must be a non-negative integer, got {n!r}")
    out = 1.0
    qi = 1.0
    for _ in range(int(n)):
        out *= 1.0 - a * qi
        qi *= qp.q
    return out


def q_factorial(n: int, q: QLike) -> float:
    """[n]_q! = [1]_q [2]_q ... [n]_q."""
    qp = as_qparam(q)
    if int(n) != n or n < 0:
        raise QDomainError(f"n must be a non-negative integer, got {n!r}")
    return math.prod(q_bracket(k, qp) for k in range(1, int(n) + 1))


def _vanishing_index(a: float, qp: QParam):
    """Index k >= 0 with a*q^k == 1 to working precision, else None."""
    if a <= 0.0:
        return None
    k = math.log(a) / -qp.ln_q
    kr = round(k)
    if kr >= 0 and abs(k - kr) <= 4e-15 * max(1.0, abs(k)):
        return int(kr)
    return None


def log_q_pochhammer_inf(a: float, q: QLike, policy: SeriesPolicy = DEFAULT_POLICY):
    """Sign and log-magnitude of (a; q)_inf.

    Returns ``(sign, log_abs, terms_used, tail_estimate)``. ``sign`` is 0 when a
    factor vanishes; factors with a*q^k equal to 1 to working precision are
    treated as exact zeros.
    """
    qp = as_qparam(q)
    a = float(a)
    if not math.isfinite(a):
        raise QDomainError(f"a must be finite, got {a!r}")
    if a == 0.0:
        return 1, 0.0, 0, 0.0
    if _vanishing_index(a, qp) is not None:
        return 0, -math.inf, 0, 0.0

    ln_abs_a = math.log(abs(a))
    # stop once |a| q^i < rel_tol (1 - q): the log-tail is then below rel_tol
    n_terms = geometric_cutoff(policy.rel_tol * qp.one_minus_q / abs(a), qp.ln_q)
    _check_terms(n_terms, policy, "(a; q)_inf")

    sign = 1
    pieces = []
    for start in range(0, n_terms, CHUNK):
        i = np.arange(start, min(n_terms, start + CHUNK), dtype=float)
        z = ln_abs_a + i * qp.ln_q
        if a < 0.0:
            pieces.append(math.fsum(np.logaddexp(0.0, z)))
            continue
        below = z < 0.0
        logs = np.empty_like(z)
        logs[below] = log1mexp(z[below])
        logs[~below] = np.log(np.expm1(z[~below]))
        if np.count_nonzero(~below) % 2:
            sign = -sign
        pieces.append(math.fsum(logs))
    small = abs(a) * math.exp(n_terms * qp.ln_q)
    tail = small / qp.one_minus_q / max(1e-300, 1.0 - min(small, 0.5))
    return sign, math.fsum(pieces), n_terms, tail


def q_pochhammer_inf(a: float, q: QLike, policy: SeriesPolicy = DEFAULT_POLICY,
                     full_output: bool = False):
    """Infinite q-Pochhammer symbol (a; q)_inf = prod_{i>=0} (1 - a q^i)."""
    sign, log_abs, n, tail = log_q_pochhammer_inf(a, q, policy)
    if sign == 0:
        value = 0.0
    else:
        if log_abs > 709.78:
            raise QOverflowError(f"(a; q)_inf overflows: log|value| = {log_abs:.6g}")
        value = sign * math.exp(log_abs)
    if full_output:
        return SeriesResult(value, n, True, tail * abs(value))
    return value


def q_exp_E(t: float, q: QLike, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """The q-exponential E_q^t evaluated through its product (-(1-q) t; q)_inf."""
    qp = as_qparam(q)
    t = float(t)
    if not math.isfinite(t):
        raise QDomainError(f"t must be finite, got {t!r}")
    if t == 0.0:
        return 1.0
    return q_pochhammer_inf(-qp.one_minus_q * t, qp, policy)


def q_exp_E_series(t: float, q: QLike, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """E_q^t from its power series sum q^{n(n-1)/2} t^n / [n]_q!.

    Only reliable for t >= 0; the series alternates for negative t.
    """
    qp = as_qparam(q)
    t = float(t)
    total = 1.0
    term = 1.0
    qn = 1.0
    for n in range(policy.max_terms):
        term *= qn * t / q_bracket(n + 1, qp)
        qn *= qp.q
        total += term
        if abs(term) <= policy.rel_tol * abs(total) * 1e-3 or term == 0.0:
            return total
    raise ConvergenceError("E_q series did not converge", partial=total,
                           terms_used=policy.max_terms)

"""Grid-based numerical checks of the q-Gamma ratio inequalities, monotonicity
statements, limits and sharpness claims.

Ratio inequalities are evaluated in log space. The margins are built from
termwise sums that never subtract two O(1) log-gammas, so they stay
relatively accurate when the bounds pinch together (x large). This is
floating-point grid evidence, not interval arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence

import numpy as np

from .core import DEFAULT_POLICY, QLike, SeriesPolicy, log1mexp, q_exp_E
from .quadrature import HolderResult, holder_check
from .report import BoundReport, GridSpec, build_report
from .special import (
    _qp,
    classical_log_gamma,
    log_qgamma,
    log_ratio_sum,
    psi_exp_moment,
    qpsi_difference,
)

SLACK = 1e-10
# strict inequalities must clear this at interior points
STRICT_FLOOR = 1e-13
TINY = 5e-324

Q_SET = (0.05, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99)
S_SET = (0.1, 0.25, 0.5, 0.75, 0.9)

X_GRID = GridSpec(0.01, 100.0, 400, "log")
UNIT_GRID = GridSpec(0.001, 0.999, 500, "linear")
MONOTONE_GRID = GridSpec(0.01, 200.0, 400, "log")
QI_GRID = GridSpec(0.01, 100.0, 200, "log")
PHI_GRID = GridSpec(1e-6, 50.0, 300, "log")
SHARP_GRID = GridSpec(0.01, 200.0, 400, "log")


def _weak(n, slack=SLACK):
    return [-slack] * n


def _wendel_log_terms(x: float, s: float, q, policy):
    """Lower and middle of the q-Wendel bound in log form (upper is 0)."""
    lq = q.ln_q
    lb = log1mexp(x * lq)
    lower = (1.0 - s) * (lb - log1mexp((x + s) * lq))
    mid = log_ratio_sum(x + s, -s, q, policy).value - s * lb
    return lower, mid


def wendel_log_mid(x: float, s: float, q: QLike, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """ln of Gamma_q(x+s) / ([x]_q^s Gamma_q(x))."""
    return _wendel_log_terms(x, s, _qp(q), policy)[1]


def check_q_wendel(q: QLike, s: float, grid: GridSpec = X_GRID,
                   policy: SeriesPolicy = DEFAULT_POLICY) -> BoundReport:
    """([x]/[x+s])^(1-s) <= Gamma_q(x+s) / ([x]^s Gamma_q(x)) <= 1, in logs."""
    qp = _qp(q)
    if not 0.0 < s < 1.0:
        raise ValueError(f"s must lie in (0, 1), got {s!r}")
    xs = grid.points()
    lower, mid = zip(*(_wendel_log_terms(x, s, qp, policy) for x in xs))
    upper = [0.0] * len(xs)
    return build_report(
        f"q_wendel(s={s:g})", grid, qp.q, xs, lower, mid, upper,
        [m - lo for m, lo in zip(mid, lower)], [-m for m in mid],
        _weak(len(xs)), _weak(len(xs)), params={"s": s},
    )


def _sandor_pieces(x: float, qp, policy):
    """(sum, ln(1-q^x), ln(1-q^(x+1/2))) with
    ln Gamma_q(x+1) - ln Gamma_q(x+1/2) = -ln(1-q)/2 + sum."""
    s = log_ratio_sum(x + 1.0, -0.5, qp, policy).value
    return s, log1mexp(x * qp.ln_q), log1mexp((x + 0.5) * qp.ln_q)


def check_q_sandor(q: QLike, grid: GridSpec = X_GRID,
                   policy: SeriesPolicy = DEFAULT_POLICY) -> BoundReport:
    """sqrt([x]_q) <= Gamma_q(x+1) / Gamma_q(x+1/2) <= sqrt([x+1/2]_q), in logs."""
    qp = _qp(q)
    xs = grid.points()
    l1q = math.log1p(-qp.q)
    lower, mid, upper, lm, um = [], [], [], [], []
    for x in xs:
        s, lb, lbh = _sandor_pieces(x, qp, policy)
        lower.append(0.5 * (lb - l1q))
        mid.append(-0.5 * l1q + s)
        upper.append(0.5 * (lbh - l1q))
        lm.append(s - 0.5 * lb)
        um.append(0.5 * lbh - s)
    return build_report("q_sandor", grid, qp.q, xs, lower, mid, upper, lm, um,
                        _weak(len(xs)), _weak(len(xs)))


def _log_gamma_half(qp, policy) -> float:
    return log_qgamma(0.5, qp, policy=policy)


def check_theorem2(q: QLike, grid: GridSpec = UNIT_GRID,
                   policy: SeriesPolicy = DEFAULT_POLICY,
                   interior: tuple[float, float] = (0.05, 0.95)) -> BoundReport:
    """1/sqrt(pi_q) < Gamma_q(x+1)/Gamma_q(x+1/2) < (1+sqrt q)/sqrt(pi_q) on (0, 1).

    Points inside ``interior`` must clear STRICT_FLOOR; the rest get the usual
    slack since the bounds are attained in the limit at the endpoints.
    """
    qp = _qp(q)
    if not (grid.start > 0.0 and grid.stop < 1.0):
        raise ValueError("the unit-interval bound needs a grid strictly inside (0, 1)")
    xs = grid.points()
    half_log_pi = _log_gamma_half(qp, policy)
    lo = -half_log_pi
    hi = math.log1p(math.sqrt(qp.q)) - half_log_pi
    l1q = math.log1p(-qp.q)
    mid = [-0.5 * l1q + _sandor_pieces(x, qp, policy)[0] for x in xs]
    req = [STRICT_FLOOR if interior[0] <= x <= interior[1] else -SLACK for x in xs]
    return build_report(
        "theorem2", grid, qp.q, xs, [lo] * len(xs), mid, [hi] * len(xs),
        [m - lo for m in mid], [hi - m for m in mid], req, req,
        params={"interior": list(interior), "strict_floor": STRICT_FLOOR},
    )


def log_F(x: float, q: QLike, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """ln of [x]_q^(-1/2) Gamma_q(x+1) / Gamma_q(x+1/2)."""
    s, lb, _ = _sandor_pieces(x, _qp(q), policy)
    return s - 0.5 * lb


def log_G(x: float, q: QLike, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """ln of [x+1/2]_q^(-1/2) Gamma_q(x+1) / Gamma_q(x+1/2); x = 0 is allowed."""
    qp = _qp(q)
    s = log_ratio_sum(x + 1.0, -0.5, qp, policy).value
    return s - 0.5 * log1mexp((x + 0.5) * qp.ln_q)


def log_H(x: float, q: QLike, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """ln of sqrt(pi_q) Gamma_q(x+1) / Gamma_q(x+1/2)."""
    qp = _qp(q)
    return (_log_gamma_half(qp, policy) - 0.5 * math.log1p(-qp.q)
            + log_ratio_sum(x + 1.0, -0.5, qp, policy).value)


def _strict(n):
    return [TINY] * n


def check_monotone_F(q: QLike, grid: GridSpec = MONOTONE_GRID,
                     policy: SeriesPolicy = DEFAULT_POLICY) -> BoundReport:
    """F strictly decreasing and F >= 1 (its limit as x -> inf), in logs.

    Each point's upper bound is the previous grid value; the first point has none.
    """
    qp = _qp(q)
    xs = grid.points()
    mid = [log_F(x, qp, policy) for x in xs]
    upper = [math.inf] + mid[:-1]
    return build_report(
        "monotone_F", grid, qp.q, xs, [0.0] * len(xs), mid, upper,
        mid, [u - m for u, m in zip(upper, mid)], _weak(len(xs)), _strict(len(xs)),
        params={"direction": "decreasing", "limit": 1.0},
    )


def check_monotone_G(q: QLike, grid: GridSpec = MONOTONE_GRID,
                     policy: SeriesPolicy = DEFAULT_POLICY) -> BoundReport:
    """G strictly increasing and G <= 1, in logs; the first point is compared with G(0)."""
    qp = _qp(q)
    xs = grid.points()
    mid = [log_G(x, qp, policy) for x in xs]
    lower = [log_G(0.0, qp, policy)] + mid[:-1]
    return build_report(
        "monotone_G", grid, qp.q, xs, lower, mid, [0.0] * len(xs),
        [m - lo for m, lo in zip(mid, lower)], [-m for m in mid],
        _strict(len(xs)), _weak(len(xs)),
        params={"direction": "increasing", "limit": 1.0},
    )


def check_monotone_H(q: QLike, grid: GridSpec = UNIT_GRID,
                     policy: SeriesPolicy = DEFAULT_POLICY) -> BoundReport:
    """H strictly increasing on (0, 1) between its endpoint limits 1 and 1+sqrt q.

    The first point is compared with the limit ln H(0+) = 0.
    """
    qp = _qp(q)
    if not (grid.start > 0.0 and grid.stop < 1.0):
        raise ValueError("H is checked on a grid strictly inside (0, 1)")
    xs = grid.points()
    mid = [log_H(x, qp, policy) for x in xs]
    lower = [0.0] + mid[:-1]
    top = math.log1p(math.sqrt(qp.q))
    return build_report(
        "monotone_H", grid, qp.q, xs, lower, mid, [top] * len(xs),
        [m - lo for m, lo in zip(mid, lower)], [top - m for m in mid],
        _strict(len(xs)), _weak(len(xs)),
        params={"direction": "increasing", "limits": [1.0, 1.0 + math.sqrt(qp.q)]},
    )


@dataclass
class LimitReport:
    name: str
    q: float
    x_probe: float
    params: dict[str, Any]
    deviations: dict[str, tuple[float, float]]
    threshold: float
    passed: bool
    classical: dict[str, tuple[float, float]] = field(default_factory=dict)

    def summary(self) -> dict[str, Any]:
        worst = max(d[0] for d in self.deviations.values())
        return {"name": self.name, "q": self.q, "points": 2 * len(self.deviations),
                "violations": 0 if self.passed else 1,
                "min_lower_margin": self.threshold - worst, "min_upper_margin": math.nan,
                "pass": self.passed}

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "q": self.q, "x_probe": self.x_probe,
                "params": self.params, "threshold": self.threshold,
                "deviations": {k: list(v) for k, v in self.deviations.items()},
                "classical": {k: list(v) for k, v in self.classical.items()},
                "pass": self.passed}


def _classical_wendel_log(x: float, s: float) -> float:
    return classical_log_gamma(x + s) - classical_log_gamma(x) - s * math.log(x)


def check_wendel_limits(q: QLike, s: float = 0.5, alpha: float = 0.3, beta: float = 0.7,
                        x_probe: float = 50.0,
                        policy: SeriesPolicy = DEFAULT_POLICY) -> LimitReport:
    """Two-point decay of |ratio - 1| for both q-Wendel limits.

    Deviations are measured at x_probe and 2*x_probe. The threshold follows
    from the Wendel bounds: each log-ratio is at most q^x/(1-q^x) in size.
    """
    qp = _qp(q)

    def devs(x):
        m_s = wendel_log_mid(x, s, qp, policy)
        if alpha == beta:
            m_ab = 0.0
        else:
            m_ab = wendel_log_mid(x, alpha, qp, policy) - wendel_log_mid(x, beta, qp, policy)
        return abs(math.expm1(m_s)), abs(math.expm1(m_ab))

    near, far = devs(x_probe), devs(2.0 * x_probe)
    qx = math.exp(x_probe * qp.ln_q)
    threshold = math.expm1(2.0 * qx / -math.expm1(x_probe * qp.ln_q)) + 1e-15
    deviations = {"s": (near[0], far[0]), "alpha_beta": (near[1], far[1])}
    ok = all(d1 <= threshold and (d2 < d1 or d1 == d2 == 0.0)
             for d1, d2 in deviations.values())
    classical = {}
    for x in (x_probe, 2.0 * x_probe):
        cl = math.exp(_classical_wendel_log(x, s))
        classical[f"x={x:g}"] = (cl, math.exp(wendel_log_mid(x, s, qp, policy)))
    return LimitReport("wendel_limits", qp.q, x_probe,
                       {"s": s, "alpha": alpha, "beta": beta},
                       deviations, threshold, ok, classical)


def check_qi_psi_bound(q: QLike, grid: GridSpec = QI_GRID,
                       policy: SeriesPolicy = DEFAULT_POLICY) -> BoundReport:
    """psi_q(x+1) - psi_q(x+1/2) >= -(1/2) q^(x+1/2) ln q / (1 - q^(x+1/2))."""
    qp = _qp(q)
    xs = grid.points()
    mid = [qpsi_difference(x + 1.0, x + 0.5, qp, policy) for x in xs]
    lower = [0.5 * psi_exp_moment(x + 0.5, qp) for x in xs]
    n = len(xs)
    return build_report(
        "qi_psi_bound", grid, qp.q, xs, lower, mid, [math.inf] * n,
        [m - lo for m, lo in zip(mid, lower)], [math.inf] * n,
        [-SLACK * abs(m) for m in mid], [0.0] * n, domain="linear",
    )


def phi(t: float) -> float:
    return math.exp(-0.5 * t) - 0.5 * math.exp(-t) - 0.5


def check_phi_negative(grid: GridSpec = PHI_GRID) -> BoundReport:
    """phi(t) < 0 for every t > 0 on the grid; phi(0) = 0 is recorded in params."""
    if grid.start <= 0.0:
        raise ValueError("phi is checked on t > 0")
    ts = grid.points()
    mid = [phi(t) for t in ts]
    n = len(ts)
    at_zero = phi(0.0)
    rep = build_report(
        "phi_negative", grid, None, ts, [-math.inf] * n, mid, [0.0] * n,
        [math.inf] * n, [-m for m in mid], [0.0] * n, _strict(n),
        domain="linear", params={"phi_at_zero": at_zero},
    )
    rep.passed = rep.passed and at_zero == 0.0
    return rep


def check_classical_inequalities(grid: GridSpec = X_GRID,
                                 s_values: Sequence[float] = S_SET,
                                 n_max: int = 20) -> list[BoundReport]:
    """Classical Wendel and Sandor bounds on a grid and the traffic-flow
    inequality for n = 1..n_max (exact, in rationals)."""
    xs = grid.points()
    reports = []
    for s in s_values:
        lower = [(1.0 - s) * (math.log(x) - math.log(x + s)) for x in xs]
        mid = [_classical_wendel_log(x, s) for x in xs]
        reports.append(build_report(
            f"classical_wendel(s={s:g})", grid, None, xs, lower, mid, [0.0] * len(xs),
            [m - lo for m, lo in zip(mid, lower)], [-m for m in mid],
            _weak(len(xs)), _weak(len(xs)), params={"s": s}))

    lower = [0.5 * math.log(x) for x in xs]
    mid = [classical_log_gamma(x + 1.0) - classical_log_gamma(x + 0.5) for x in xs]
    upper = [0.5 * math.log(x + 0.5) for x in xs]
    reports.append(build_report(
        "classical_sandor", grid, None, xs, lower, mid, upper,
        [m - lo for m, lo in zip(mid, lower)], [u - m for u, m in zip(upper, mid)],
        _weak(len(xs)), _weak(len(xs))))

    # Gamma(n + 1/2)/sqrt(pi) = (2n)! / (4^n n!), so after dividing by sqrt(pi)
    # every quantity is rational.
    ns = list(range(1, n_max + 1))
    lo, md, up = [], [], []
    for n in ns:
        half = Fraction(math.factorial(2 * n), 4 ** n * math.factorial(n))
        lo.append(2 * half)
        md.append(Fraction(math.factorial(n)))
        up.append(2 ** n * half)
    lm = [m - l for m, l in zip(md, lo)]
    um = [u - m for u, m in zip(up, md)]
    reports.append(build_report(
        "traffic_flow", GridSpec(1.0, float(n_max), n_max, "linear") if n_max > 1
        else GridSpec(1.0, 2.0, 1, "linear"),
        None, ns, lo, md, up, lm, um, [0] * n_max, [0] * n_max, domain="linear",
        params={"scaled_by": "1/sqrt(pi)", "exact": True}))
    return reports


@dataclass
class RecoveryReport:
    name: str
    q: float
    xs: list[float]
    rel_dev: list[float]
    max_rel_dev: float
    tolerance: float
    passed: bool
    params: dict[str, Any] = field(default_factory=dict)

    def summary(self) -> dict[str, Any]:
        return {"name": self.name, "q": self.q, "points": len(self.xs),
                "violations": sum(d > self.tolerance for d in self.rel_dev),
                "min_lower_margin": self.tolerance - self.max_rel_dev,
                "min_upper_margin": math.nan, "pass": self.passed}

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "q": self.q, "xs": self.xs, "rel_dev": self.rel_dev,
                "max_rel_dev": self.max_rel_dev, "tolerance": self.tolerance,
                "params": self.params, "pass": self.passed}


def check_classical_recovery(q: QLike = 0.9999,
                             grid: GridSpec = GridSpec(0.5, 5.0, 19, "linear"),
                             s_values: Sequence[float] = (0.25, 0.5, 0.75),
                             tolerance: float = 5e-3,
                             policy: SeriesPolicy = DEFAULT_POLICY) -> list[RecoveryReport]:
    """Relative distance between the q-Wendel / q-Sandor middle expressions
    near q = 1 and their classical counterparts."""
    qp = _qp(q)
    xs = grid.points()
    out = []
    for s in s_values:
        dev = [abs(math.expm1(wendel_log_mid(x, s, qp, policy) - _classical_wendel_log(x, s)))
               for x in xs]
        out.append(RecoveryReport(f"recovery_wendel(s={s:g})", qp.q, xs, dev, max(dev),
                                  tolerance, max(dev) <= tolerance, {"s": s}))
    l1q = math.log1p(-qp.q)
    dev = []
    for x in xs:
        q_mid = -0.5 * l1q + _sandor_pieces(x, qp, policy)[0]
        c_mid = classical_log_gamma(x + 1.0) - classical_log_gamma(x + 0.5)
        dev.append(abs(math.expm1(q_mid - c_mid)))
    out.append(RecoveryReport("recovery_sandor", qp.q, xs, dev, max(dev), tolerance,
                              max(dev) <= tolerance))
    return out


@dataclass
class SharpnessReport:
    name: str
    q: float
    which: str
    points: list[dict[str, float]]
    terminal: dict[str, float]
    threshold: float
    monotone: Optional[bool]
    passed: bool
    note: str = "decay thresholds are empirical choices; no rate is asserted"

    def summary(self) -> dict[str, Any]:
        return {"name": self.name, "q": self.q, "points": len(self.points),
                "violations": 0 if self.passed else 1,
                "min_lower_margin": self.terminal.get("lower", math.nan),
                "min_upper_margin": self.terminal.get("upper", math.nan),
                "pass": self.passed}

    def to_dict(self) -> dict[str, Any]:
        from .report import _jsonable
        return _jsonable({"name": self.name, "q": self.q, "which": self.which,
                          "points": self.points, "terminal": self.terminal,
                          "threshold": self.threshold, "monotone": self.monotone,
                          "note": self.note, "pass": self.passed})


def _approach(edge: float, toward: float, steps: int = 3) -> list[float]:
    """Points edge + (toward - edge)*10^k moving toward ``toward`` ... ending at ``edge``."""
    gap = edge - toward
    return [toward + gap * 10.0 ** (steps - 1 - k) for k in range(steps)]


def sharpness_report(q: QLike, which: str = "sandor", grid: Optional[GridSpec] = None,
                     threshold: Optional[float] = None,
                     policy: SeriesPolicy = DEFAULT_POLICY) -> SharpnessReport:
    """How closely the two-sided bounds are approached.

    sandor: relative gaps mid/lower - 1 and 1 - mid/upper; the gaps at the
    largest grid point must be below ``threshold`` (default 1e-6) and shrink
    along the grid.
    theorem2: log margins along x -> 0+ and x -> 1- subsequences ending at the
    grid endpoints; they must shrink and end below ``threshold`` (default 1e-2).
    """
    qp = _qp(q)
    which = which.lower()
    if which == "sandor":
        grid = grid or SHARP_GRID
        threshold = 1e-6 if threshold is None else threshold
        rep = check_q_sandor(qp, grid, policy)
        pts = [{"x": p.x, "lower_gap": math.expm1(p.lower_margin),
                "upper_gap": -math.expm1(-p.upper_margin)} for p in rep.points]
        last = pts[-1]
        terminal = {"x": last["x"], "lower": last["lower_gap"], "upper": last["upper_gap"]}
        monotone = None
        if len(pts) > 1:
            monotone = all(b["lower_gap"] <= a["lower_gap"] and b["upper_gap"] <= a["upper_gap"]
                           for a, b in zip(pts, pts[1:]))
        ok = rep.passed and terminal["lower"] <= threshold and terminal["upper"] <= threshold
        ok = ok and monotone is not False
        return SharpnessReport("sharpness_sandor", qp.q, "sandor", pts, terminal, threshold,
                               monotone, ok)
    if which == "theorem2":
        grid = grid or UNIT_GRID
        threshold = 1e-2 if threshold is None else threshold
        left = _approach(grid.start, 0.0)
        right = _approach(grid.stop, 1.0)
        half_log_pi = _log_gamma_half(qp, policy)
        l1q = math.log1p(-qp.q)
        top = math.log1p(math.sqrt(qp.q))

        def margins(x):
            m = -0.5 * l1q + _sandor_pieces(x, qp, policy)[0] + half_log_pi
            return m, top - m

        pts = []
        for x in left:
            pts.append({"x": x, "side": "lower", "margin": margins(x)[0]})
        for x in right:
            pts.append({"x": x, "side": "upper", "margin": margins(x)[1]})
        lm = [p["margin"] for p in pts if p["side"] == "lower"]
        um = [p["margin"] for p in pts if p["side"] == "upper"]
        monotone = (all(b < a for a, b in zip(lm, lm[1:]))
                    and all(b < a for a, b in zip(um, um[1:])))
        terminal = {"x_left": left[-1], "lower": lm[-1], "x_right": right[-1], "upper": um[-1]}
        ok = (monotone and 0.0 < lm[-1] < threshold and 0.0 < um[-1] < threshold)
        return SharpnessReport("sharpness_theorem2", qp.q, "theorem2", pts, terminal,
                               threshold, monotone, ok)
    raise ValueError(f"unknown sharpness target {which!r}; use 'sandor' or 'theorem2'")


@dataclass
class HolderSuiteReport:
    name: str
    seed: int
    trials: list[dict[str, Any]]
    min_rel_margin: float
    passed: bool

    def summary(self) -> dict[str, Any]:
        return {"name": self.name, "q": None, "points": len(self.trials),
                "violations": sum(not t["pass"] for t in self.trials),
                "min_lower_margin": self.min_rel_margin, "min_upper_margin": math.nan,
                "pass": self.passed}

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "seed": self.seed, "trials": self.trials,
                "min_rel_margin": self.min_rel_margin, "pass": self.passed}


def random_positive_function(rng: np.random.Generator, upper: float):
    """c0 + c1 t^p + sum_j h_j [t >= b_j], strictly positive on (0, upper]."""
    c0 = rng.uniform(0.05, 2.0)
    c1 = rng.uniform(0.0, 2.0)
    p = rng.uniform(0.0, 3.0)
    steps = [(rng.uniform(0.0, 1.5), rng.uniform(0.0, upper)) for _ in range(3)]

    def f(t):
        return c0 + c1 * t ** p + sum(h for h, b in steps if t >= b)

    return f


def run_holder_trials(q_values: Sequence[float] = (0.3, 0.5, 0.9), n_trials: int = 50,
                      seed: int = 0, a_exps: Sequence[float] = (1.5, 2.0, 3.0),
                      policy: SeriesPolicy = DEFAULT_POLICY) -> HolderSuiteReport:
    rng = np.random.default_rng(seed)
    trials = []
    for i in range(n_trials):
        q = float(q_values[i % len(q_values)])
        a_exp = float(a_exps[i % len(a_exps)])
        upper = float(rng.uniform(0.5, 5.0))
        f = random_positive_function(rng, upper)
        g = random_positive_function(rng, upper)
        r = holder_check(f, g, a_exp, q, upper, policy)
        trials.append({"trial": i, "q": q, "a_exp": a_exp, "upper": upper,
                       "lhs": r.lhs, "rhs": r.rhs, "margin": r.margin,
                       "rel_margin": r.margin / abs(r.rhs), "pass": r.passed})
    min_rel = min(t["rel_margin"] for t in trials)
    return HolderSuiteReport("holder", seed, trials, min_rel, all(t["pass"] for t in trials))


def holder_gamma_instance(q: QLike, s: float, x: float, weighted: bool = True,
                          policy: SeriesPolicy = DEFAULT_POLICY) -> HolderResult:
    """Hoelder applied on [0, 1/(1-q)] with exponents 1/(1-s), 1/s.

    ``weighted=False`` uses f = t^((1-s)(x-1)) E_q^(-(1-s)qt), g = t^(sx) E_q^(-sqt).
    ``weighted=True`` splits the weight w = E_q^(-qt) itself,
    f = t^((1-s)(x-1)) w^(1-s), g = t^(sx) w^s, so that the three integrals are
    exactly Gamma_q(x+s), Gamma_q(x) and Gamma_q(x+1).
    """
    qp = _qp(q)
    upper = 1.0 / qp.one_minus_q
    if weighted:
        def w(t):
            return q_exp_E(-qp.q * t, qp, policy)

        def f(t):
            return t ** ((1.0 - s) * (x - 1.0)) * w(t) ** (1.0 - s)

        def g(t):
            return t ** (s * x) * w(t) ** s
    else:
        def f(t):
            return t ** ((1.0 - s) * (x - 1.0)) * q_exp_E(-(1.0 - s) * qp.q * t, qp, policy)

        def g(t):
            return t ** (s * x) * q_exp_E(-s * qp.q * t, qp, policy)

    return holder_check(f, g, 1.0 / (1.0 - s), qp, upper, policy)


SUITES = ("wendel", "sandor", "theorem2", "monotone", "limits", "qi", "phi", "holder",
          "classical")


def run_suite(name: str, q_values: Sequence[float] = Q_SET, *, grid: Optional[GridSpec] = None,
              s_values: Sequence[float] = S_SET, seed: int = 0,
              policy: SeriesPolicy = DEFAULT_POLICY) -> list:
    """Run one named suite (or ``all``) over q_values, q outermost."""
    if name == "all":
        out = []
        for suite in SUITES:
            out.extend(run_suite(suite, q_values, grid=grid, s_values=s_values, seed=seed,
                                 policy=policy))
        return out
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    if name == "phi":
        return [check_phi_negative(grid or PHI_GRID)]
    if name == "holder":
        return [run_holder_trials(tuple(q_values), seed=seed, policy=policy)]
    if name == "classical":
        return [*check_classical_inequalities(grid or X_GRID, s_values),
                *check_classical_recovery(policy=policy)]
    out = []
    for q in q_values:
        if name == "wendel":
            out.extend(check_q_wendel(q, s, grid or X_GRID, policy) for s in s_values)
        elif name == "sandor":
            out.append(check_q_sandor(q, grid or X_GRID, policy))
        elif name == "theorem2":
            out.append(check_theorem2(q, grid or UNIT_GRID, policy))
        elif name == "monotone":
            out.append(check_monotone_F(q, grid or MONOTONE_GRID, policy))
            out.append(check_monotone_G(q, grid or MONOTONE_GRID, policy))
            out.append(check_monotone_H(q, UNIT_GRID, policy))
        elif name == "limits":
            out.append(check_wendel_limits(q, policy=policy))
        elif name == "qi":
            out.append(check_qi_psi_bound(q, grid or QI_GRID, policy))
    return out

"""Command-line front end.

Examples:
  qgammalab eval qgamma --q 0.5 --x 1
  qgammalab verify sandor --q 0.5
  qgammalab verify all --q 0.1,0.5,0.9
  qgammalab scan sandor --q 0.5 --grid log:0.01:100:400 --format csv
  qgammalab sharpness sandor --q 0.5

Exit codes: 0 all checks pass, 1 an inequality violation was found,
2 usage error, 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Optional, Sequence

from . import lab
from .core import QParam, SeriesPolicy, q_bracket, q_exp_E, q_pochhammer_inf
from .errors import ConvergenceError, QDomainError, QOverflowError
from .quadrature import jackson_integral_0a, jackson_integral_0inf
from .report import CSV_COLUMNS, GridSpec, _jsonable
from .special import (
    QGammaBackend,
    QPsiBackend,
    log_qgamma,
    pi_q,
    qgamma,
    qgamma_integrand,
    qpsi,
)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_NONCONVERGENCE = 0, 1, 2, 3

EVAL_FUNCTIONS = ("qgamma", "log_qgamma", "qpsi", "q_bracket", "q_exp", "pochhammer_inf",
                  "pi_q", "jackson")
SCAN_CHECKS = ("wendel", "sandor", "theorem2", "monotone_F", "monotone_G", "monotone_H",
               "qi", "phi")

GRID_HELP = ("evaluation grid as scale:start:stop:count with scale linear or log, "
             "e.g. log:0.01:100:400")


class UsageError(Exception):
    pass


def _floats(text: str, what: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"{what} must be a comma-separated list of numbers, got {text!r}")


def _q_list(text: str) -> list[float]:
    values = _floats(text, "--q")
    if not values:
        raise UsageError("--q needs at least one value")
    for v in values:
        try:
            QParam(v)
        except QDomainError as exc:
            raise UsageError(str(exc))
    return values


def _grid(text: Optional[str]) -> Optional[GridSpec]:
    if text is None:
        return None
    try:
        return GridSpec.parse(text)
    except ValueError as exc:
        raise UsageError(f"bad --grid: {exc}")


def _policy(args) -> SeriesPolicy:
    kw = {}
    if args.rel_tol is not None:
        kw["rel_tol"] = args.rel_tol
    if args.max_terms is not None:
        kw["max_terms"] = args.max_terms
    try:
        return SeriesPolicy(**kw)
    except ValueError as exc:
        raise UsageError(str(exc))


def _emit(text: str, args) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_common(p: argparse.ArgumentParser, fmt_default: str = "text") -> None:
    p.add_argument("--format", choices=("text", "csv", "json"), default=fmt_default,
                   dest="output_format")
    p.add_argument("--output", help="write to this file instead of stdout")
    p.add_argument("--rel-tol", type=float, help="relative truncation tolerance (default 1e-13)")
    p.add_argument("--max-terms", type=int, help="term cap for every series (default 1e7)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qgammalab",
        description="q-Gamma function family and inequality verification lab.",
        epilog="Exit codes: 0 pass, 1 violation, 2 usage error, 3 non-convergence.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a function")
    p.add_argument("function", choices=EVAL_FUNCTIONS)
    p.add_argument("--q", required=True, help="deformation parameter(s), comma-separated")
    p.add_argument("--x", help="argument(s), comma-separated")
    p.add_argument("--t", help="argument of q_exp")
    p.add_argument("--a", type=float, help="pochhammer_inf base, or jackson upper limit")
    p.add_argument("--backend", choices=[b.value for b in QGammaBackend], default="product")
    p.add_argument("--psi-backend", choices=[b.value for b in QPsiBackend], default="direct")
    p.add_argument("--form", choices=("0a", "0inf"), default="0a",
                   help="jackson: integrate t^(x-1) E_q^(-qt) on [0, a] or on [0, inf)")
    _add_common(p)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suite", choices=lab.SUITES + ("all",))
    p.add_argument("--q", default=",".join(map(str, lab.Q_SET)))
    p.add_argument("--grid", help=GRID_HELP)
    p.add_argument("--s", help="Wendel s values, comma-separated")
    p.add_argument("--seed", type=int, default=0, help="seed for the random Hoelder trials")
    _add_common(p)

    p = sub.add_parser("scan", help="per-point table of one check for plotting")
    p.add_argument("check", choices=SCAN_CHECKS)
    p.add_argument("--q", default="0.5", help="a single q")
    p.add_argument("--grid", help=GRID_HELP)
    p.add_argument("--s", type=float, default=0.5, help="Wendel s")
    _add_common(p, fmt_default="csv")

    p = sub.add_parser("sharpness", help="how closely the two-sided bounds are approached")
    p.add_argument("which", choices=("sandor", "theorem2"), nargs="?", default="sandor")
    p.add_argument("--q", default="0.5")
    p.add_argument("--grid", help=GRID_HELP)
    _add_common(p)

    p = sub.add_parser("all", help="every verification suite plus both sharpness reports")
    p.add_argument("--q", default=",".join(map(str, lab.Q_SET)))
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)
    return parser


def _eval_one(args, q: float, x: Optional[float], policy: SeriesPolicy):
    name = args.function
    params = {"q": q}
    res = None
    if name in ("qgamma", "log_qgamma", "qpsi", "q_bracket", "jackson") and x is None:
        raise UsageError(f"{name} needs --x")
    if name in ("qgamma", "log_qgamma", "qpsi", "q_bracket", "jackson"):
        params["x"] = x
    if name == "qgamma":
        params["backend"] = args.backend
        res = qgamma(x, q, args.backend, policy, full_output=True)
    elif name == "log_qgamma":
        params["backend"] = args.backend
        res = log_qgamma(x, q, args.backend, policy, full_output=True)
    elif name == "qpsi":
        params["backend"] = args.psi_backend
        res = qpsi(x, q, args.psi_backend, policy, full_output=True)
    elif name == "q_bracket":
        return params, q_bracket(x, q), None
    elif name == "q_exp":
        if args.t is None:
            raise UsageError("q_exp needs --t")
        t = _floats(args.t, "--t")[0]
        params["t"] = t
        return params, q_exp_E(t, q, policy), None
    elif name == "pochhammer_inf":
        if args.a is None:
            raise UsageError("pochhammer_inf needs --a")
        params["a"] = args.a
        res = q_pochhammer_inf(args.a, q, policy, full_output=True)
    elif name == "pi_q":
        return params, pi_q(q, policy), None
    elif name == "jackson":
        f = qgamma_integrand(x, q, policy)
        params["form"] = args.form
        if args.form == "0a":
            upper = args.a if args.a is not None else 1.0 / (1.0 - q)
            params["a"] = upper
            res = jackson_integral_0a(f, upper, q, policy)
        else:
            res = jackson_integral_0inf(f, q, policy, scale=1.0 / (1.0 - q))
            if not res.converged:
                raise ConvergenceError("bilateral Jackson sum did not converge",
                                       partial=res.value, terms_used=res.terms_used)
    return params, res.value, res


def cmd_eval(args) -> int:
    policy = _policy(args)
    qs = _q_list(args.q)
    xs = _floats(args.x, "--x") if args.x else [None]
    rows = []
    for q in qs:
        for x in xs:
            params, value, res = _eval_one(args, q, x, policy)
            row = {"function": args.function, **params, "value": value}
            if res is not None:
                row.update(terms_used=res.terms_used, converged=res.converged,
                           tail_estimate=res.tail_estimate)
            rows.append(row)
    if args.output_format == "json":
        _emit(json.dumps(_jsonable(rows), indent=2) + "\n", args)
    elif args.output_format == "csv":
        keys = list(dict.fromkeys(k for r in rows for k in r))
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        _emit(buf.getvalue(), args)
    else:
        lines = []
        for r in rows:
            arglist = ", ".join(f"{k}={r[k]}" for k in r
                                if k not in ("function", "value", "terms_used", "converged",
                                             "tail_estimate"))
            lines.append(f"{r['function']}({arglist}) = {r['value']!r}")
            if "terms_used" in r:
                lines.append(f"  terms_used={r['terms_used']} converged={r['converged']} "
                             f"tail_estimate={r['tail_estimate']:.3g}")
        _emit("\n".join(lines) + "\n", args)
    return EXIT_OK


def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "PASS" if v else "FAIL"
    if isinstance(v, float):
        return "nan" if math.isnan(v) else f"{v:.3e}"
    return str(v)


def _summary_output(reports, args) -> str:
    rows = [r.summary() for r in reports]
    if args.output_format == "json":
        return json.dumps(_jsonable([r.to_dict() for r in reports]), indent=1) + "\n"
    cols = ("name", "q", "points", "violations", "min_lower_margin", "min_upper_margin", "pass")
    if args.output_format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([r[c] for c in cols])
        return buf.getvalue()
    table = [[_fmt(r[c]) for c in cols] for r in rows]
    widths = [max(len(c), *(len(t[i]) for t in table)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths))]
    lines += ["  ".join(v.ljust(w) for v, w in zip(t, widths)) for t in table]
    failed = sum(not r["pass"] for r in rows)
    lines.append(f"{len(rows) - failed}/{len(rows)} checks passed")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    policy = _policy(args)
    qs = _q_list(args.q)
    grid = _grid(args.grid)
    s_values = _floats(args.s, "--s") if args.s else lab.S_SET
    if any(not 0 < s < 1 for s in s_values):
        raise UsageError("--s values must lie in (0, 1)")
    try:
        reports = lab.run_suite(args.suite, qs, grid=grid, s_values=s_values, seed=args.seed,
                                policy=policy)
    except ValueError as exc:
        if isinstance(exc, QDomainError):
            raise
        raise UsageError(str(exc))
    _emit(_summary_output(reports, args), args)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VIOLATION


def _scan_report(args, policy):
    qs = _q_list(args.q)
    if len(qs) != 1:
        raise UsageError("scan takes a single q value")
    q = qs[0]
    grid = _grid(args.grid)
    try:
        if args.check == "wendel":
            if not 0 < args.s < 1:
                raise UsageError("--s must lie in (0, 1)")
            return lab.check_q_wendel(q, args.s, grid or lab.X_GRID, policy)
        if args.check == "sandor":
            return lab.check_q_sandor(q, grid or lab.X_GRID, policy)
        if args.check == "theorem2":
            return lab.check_theorem2(q, grid or lab.UNIT_GRID, policy)
        if args.check == "monotone_F":
            return lab.check_monotone_F(q, grid or lab.MONOTONE_GRID, policy)
        if args.check == "monotone_G":
            return lab.check_monotone_G(q, grid or lab.MONOTONE_GRID, policy)
        if args.check == "monotone_H":
            return lab.check_monotone_H(q, grid or lab.UNIT_GRID, policy)
        if args.check == "qi":
            return lab.check_qi_psi_bound(q, grid or lab.QI_GRID, policy)
        return lab.check_phi_negative(grid or lab.PHI_GRID)
    except ValueError as exc:
        if isinstance(exc, QDomainError):
            raise
        raise UsageError(str(exc))


def cmd_scan(args) -> int:
    report = _scan_report(args, _policy(args))
    if args.output_format == "csv":
        text = report.to_csv()
    elif args.output_format == "json":
        text = json.dumps(_jsonable(report.rows()), indent=1) + "\n"
    else:
        lines = ["  ".join(c.rjust(13) for c in CSV_COLUMNS)]
        for row in report.rows():
            lines.append("  ".join(f"{row[c]:13.6e}" for c in CSV_COLUMNS))
        text = "\n".join(lines) + "\n"
    _emit(text, args)
    return EXIT_OK if report.passed else EXIT_VIOLATION


def _sharpness_output(reports, args) -> str:
    if args.output_format == "json":
        return json.dumps([r.to_dict() for r in reports], indent=1) + "\n"
    lines = []
    for r in reports:
        terminal = ", ".join(f"{k}={v:.3e}" for k, v in r.terminal.items())
        lines.append(f"{r.name} q={r.q:g}: {terminal} threshold={r.threshold:g} "
                     f"monotone={r.monotone} -> {'PASS' if r.passed else 'FAIL'}")
    lines.append(f"note: {reports[0].note}" if reports else "")
    return "\n".join(lines) + "\n"


def cmd_sharpness(args) -> int:
    policy = _policy(args)
    grid = _grid(args.grid)
    try:
        reports = [lab.sharpness_report(q, args.which, grid, policy=policy)
                   for q in _q_list(args.q)]
    except ValueError as exc:
        if isinstance(exc, QDomainError):
            raise
        raise UsageError(str(exc))
    _emit(_sharpness_output(reports, args), args)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VIOLATION


def cmd_all(args) -> int:
    policy = _policy(args)
    qs = _q_list(args.q)
    reports = lab.run_suite("all", qs, seed=args.seed, policy=policy)
    sharp = [lab.sharpness_report(q, which, policy=policy)
             for q in qs for which in ("sandor", "theorem2")]
    if args.output_format == "json":
        text = json.dumps(_jsonable({"suites": [r.to_dict() for r in reports],
                                     "sharpness": [r.to_dict() for r in sharp]}),
                          indent=1) + "\n"
    else:
        text = _summary_output(reports + sharp, args)
    _emit(text, args)
    return EXIT_OK if all(r.passed for r in reports + sharp) else EXIT_VIOLATION


COMMANDS = {"eval": cmd_eval, "verify": cmd_verify, "scan": cmd_scan,
            "sharpness": cmd_sharpness, "all": cmd_all}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except BrokenPipeError:
        # reader went away (e.g. piped into head); drop the rest quietly
        import os
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"qgammalab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QDomainError as exc:
        parser.print_usage(sys.stderr)
        print(f"qgammalab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QOverflowError as exc:
        print(f"qgammalab: overflow: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except ConvergenceError as exc:
        print(f"qgammalab: non-convergence: {exc} (partial={exc.partial!r}, "
              f"terms_used={exc.terms_used})", file=sys.stderr)
        return EXIT_NONCONVERGENCE


if __name__ == "__main__":
    raise SystemExit(main())

"""Command-line front end: single evaluations and verification sweeps.

Every subcommand prints one JSON document to standard output (verify can
switch to CSV); diagnostics go to standard error.  Exit codes: 0 on
success, 1 on non-convergence, 2 on invalid parameters or flags.  Floats
are printed in shortest round-trip form, so identical invocations are
bit-identical.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .basis import combo_eval, combo_json_dict, fnj_combo, fnj_series
from .heun import (
    HeunFamilyParams, heun_eval, heun_normalization, heun_ode_residual,
    heun_termination,
)
from .hypergeom import (
    HypergeomParams, hyp2f1_closed_12, hyp2f1_closed_1m, hyp2f1_closed_general,
    hyp2f1_closed_m1, hyp2f1_eval, hyp2f1_series,
)
from .mkz import (
    GmkzParams, Monomial, gmkz_apply, gmkz_e1, gmkz_moment_abel, ln_moment_e2,
    ln_moment_e2_direct, mkz_moment,
)
from .numcore import (
    DEFAULT_POLICY, DomainError, EvalPolicy, InvalidParams, NotConverged,
)
from .verify import SUITE_NAMES, run_suites

_ENV_REL_TOL = "ELEMHYP_REL_TOL"


def _resolve_policy(args) -> EvalPolicy:
    rel_tol = DEFAULT_POLICY.rel_tol
    max_terms = DEFAULT_POLICY.max_terms
    env = os.environ.get(_ENV_REL_TOL)
    if env is not None:
        try:
            rel_tol = float(env)
        except ValueError:
            print(f"warning: ignoring malformed {_ENV_REL_TOL}={env!r}",
                  file=sys.stderr)
    if args.rel_tol is not None:
        rel_tol = args.rel_tol
    if args.max_terms is not None:
        max_terms = args.max_terms
    return EvalPolicy(rel_tol=rel_tol, max_terms=max_terms)


def _emit(doc: dict):
    print(json.dumps(doc))


def _rel_err(a: float, b: float) -> float:
    if b == 0.0:
        return abs(a - b)
    return abs(a - b) / abs(b)


def _closed_with_variant(params: HypergeomParams, x: float, variant):
    m, n, p = params.m, params.n, params.p
    if n == 1.0 and m > 1:
        m, n = 1, float(m)
    if m == 1 and n == 2.0 and p >= 3:
        if variant in (None, "1", "2", "3"):
            return hyp2f1_closed_12(p - 2, x, int(variant or "1"))
        raise InvalidParams("this shape takes --variant 1, 2 or 3")
    if m == 1 and float(n).is_integer() and n >= 1 and p >= int(n) + 1:
        if variant in (None, "A", "B"):
            return hyp2f1_closed_1m(int(n), p - int(n) - 1, x, variant or "A")
        raise InvalidParams("this shape takes --variant A or B")
    if variant is not None:
        raise InvalidParams("--variant applies only to the integer-n shapes with m = 1")
    if m == 1:
        return hyp2f1_closed_m1(n, p, x)
    return hyp2f1_closed_general(HypergeomParams(m, n, p), x)


def cmd_hyp2f1(args, policy: EvalPolicy) -> int:
    params = HypergeomParams(args.m, args.n, args.p)
    if args.variant is not None and args.method != "closed":
        raise InvalidParams("--variant requires --method closed")
    if args.method == "auto":
        value = hyp2f1_eval(params, args.x, policy)
    elif args.method == "series":
        res = hyp2f1_series(float(args.m), args.n, float(args.p), args.x, policy)
        if not res.converged:
            raise NotConverged("series did not converge within max_terms")
        value = res.value
    else:
        value = _closed_with_variant(params, args.x, args.variant)
    doc = {"value": value}
    if args.compare:
        series = hyp2f1_series(float(args.m), args.n, float(args.p), args.x,
                               policy).value
        doc["series"] = series
        doc["rel_err"] = _rel_err(value, series)
    _emit(doc)
    return 0


def cmd_moment(args, policy: EvalPolicy) -> int:
    n, r, x = args.n, args.r, args.x
    if args.operator == "mkz":
        params = GmkzParams(n, 1, 0.0, 0.0)

        def closed():
            return mkz_moment(n, r, x, policy)
    elif args.operator == "ln":
        if r != 2:
            raise InvalidParams("the ln operator has a closed moment for r = 2 only")
        params = None

        def closed():
            return ln_moment_e2(n, x)
    else:
        params = GmkzParams(n, args.rop, args.alpha, args.beta)

        def closed():
            if r == 1:
                return gmkz_e1(params, x)
            if args.alpha == int(args.alpha) and args.rop == int(args.alpha) + 1:
                return gmkz_moment_abel(n, int(args.alpha), args.beta, r, x, policy)
            raise InvalidParams(
                "gmkz closed moments need r = 1, or rop = alpha+1 with integer alpha")

    def series():
        if args.operator == "ln":
            return ln_moment_e2_direct(n, x, policy)
        return gmkz_apply(params, Monomial(r), x, policy).value

    if args.route == "closed":
        doc = {"value": closed()}
    elif args.route == "series":
        doc = {"value": series()}
    else:
        c, s = closed(), series()
        doc = {"closed": c, "series": s, "rel_err": _rel_err(c, s)}
    _emit(doc)
    return 0


def cmd_fnj(args, policy: EvalPolicy) -> int:
    if args.n < 2:
        raise InvalidParams("symbolic combos are defined for n >= 2")
    if args.j < 2:
        raise InvalidParams("symbolic combos are defined for j >= 2")
    if args.x is None and not args.emit_symbolic:
        raise InvalidParams("provide --x, --emit-symbolic, or both")
    combo = fnj_combo(args.n, args.j)
    doc = {"n": args.n, "j": args.j}
    if args.emit_symbolic:
        doc["terms"] = combo_json_dict(combo)["terms"]
    if args.x is not None:
        got = combo_eval(combo, args.x, policy)
        oracle = fnj_series(args.n, args.j, args.x, policy).value
        doc["combo"] = got
        doc["series"] = oracle
        doc["rel_err"] = _rel_err(got, oracle)
    _emit(doc)
    return 0


def cmd_heun(args, policy: EvalPolicy) -> int:
    fp = HeunFamilyParams(args.m, args.n, args.p)
    res = heun_eval(fp, args.x, args.terms, policy)
    norm = heun_normalization(fp, policy)
    value = res.value / norm if args.normalized else res.value
    doc = {
        "value": value,
        "termination": heun_termination(fp),
        "normalization": norm,
        "terms_used": res.terms_used,
        "converged": res.converged,
    }
    if args.check_ode:
        doc["ode_residual"] = heun_ode_residual(fp, args.x, 1e-3, args.terms, policy)
    _emit(doc)
    return 0 if res.converged else 1


def _report_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["operation", "inputs", "result", "oracle", "rel_err", "pass"])
    for e in report["entries"]:
        writer.writerow([
            e["operation"],
            json.dumps(e["inputs"], sort_keys=True),
            repr(e["result"]),
            repr(e["oracle"]),
            repr(e["rel_err"]),
            "true" if e["pass"] else "false",
        ])
    return buf.getvalue()


def cmd_verify(args, policy: EvalPolicy) -> int:
    names = list(SUITE_NAMES) if args.suite == "all" else [args.suite]
    report = run_suites(names)
    text = _report_csv(report) if args.format == "csv" else json.dumps(report) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    ok = report["summary"]["passed"] == report["summary"]["total"]
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="elemhyp",
        description="Elementary closed forms for integer-parameter 2F1, "
                    "operator moments, symbolic moment kernels, and a "
                    "2F1-expanded Heun family.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rel-tol", type=float, default=None,
                        help="series stopping tolerance (default 1e-12; "
                             "env ELEMHYP_REL_TOL)")
    common.add_argument("--max-terms", type=int, default=None,
                        help="series term cap (default 100000)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hyp2f1", parents=[common],
                       help="evaluate 2F1(m, n; p; x)")
    p.add_argument("--m", type=int, required=True, help="first upper parameter (integer >= 1)")
    p.add_argument("--n", type=float, required=True, help="second upper parameter (real)")
    p.add_argument("--p", type=int, required=True, help="lower parameter (integer >= m+1)")
    p.add_argument("--x", type=float, required=True, help="argument in [0, 1)")
    p.add_argument("--method", choices=["series", "closed", "auto"], default="auto")
    p.add_argument("--variant", choices=["A", "B", "1", "2", "3"], default=None,
                   help="closed-form arrangement, where the shape admits several")
    p.add_argument("--compare", action="store_true",
                   help="also print the series value and relative error")
    p.set_defaults(func=cmd_hyp2f1)

    p = sub.add_parser("moment", parents=[common],
                       help="operator moments, closed formulas vs direct summation")
    p.add_argument("--operator", choices=["mkz", "ln", "gmkz"], required=True)
    p.add_argument("--n", type=int, required=True, help="operator index (integer >= 1)")
    p.add_argument("--r", type=int, required=True, help="moment order (integer >= 0)")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--alpha", type=float, default=0.0, help="gmkz only")
    p.add_argument("--beta", type=float, default=0.0, help="gmkz only")
    p.add_argument("--rop", type=int, default=1,
                   help="gmkz only: the operator's own r parameter")
    p.add_argument("--route", choices=["closed", "series", "both"], default="closed")
    p.set_defaults(func=cmd_moment)

    p = sub.add_parser("fnj", parents=[common],
                       help="moment kernels: exact combos and series values")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--x", type=float, default=None)
    p.add_argument("--emit-symbolic", action="store_true",
                   help="print the exact-rational combo")
    p.set_defaults(func=cmd_fnj)

    p = sub.add_parser("heun", parents=[common],
                       help="evaluate the 2F1 expansion of the Heun family")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=float, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--terms", type=int, default=400, help="truncation order K")
    p.add_argument("--normalized", action="store_true",
                   help="divide by the value at 0")
    p.add_argument("--check-ode", action="store_true",
                   help="append a finite-difference residual of the equation")
    p.set_defaults(func=cmd_heun)

    p = sub.add_parser("verify", parents=[common],
                       help="run a verification sweep and emit a report")
    p.add_argument("--suite", choices=list(SUITE_NAMES) + ["all"], required=True)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", default=None, help="write the report to a file")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        policy = _resolve_policy(args)
        return args.func(args, policy)
    except (InvalidParams, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NotConverged as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

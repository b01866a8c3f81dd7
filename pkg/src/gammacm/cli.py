"""Command-line front end: evaluation, tabulation, and verification.

Output is CSV (default) or JSON, fully determined by the flags — no
environment configuration, no randomness — so identical invocations
produce byte-identical output.  Floats are printed with 17 significant
digits so they round-trip exactly.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import expansions, kernels, quadrature, verification
from .bernoulli import default_table
from .errors import GammaCMError
from .kernels import KernelId, KernelKind
from .monotonicity import CMOrderSpec, cm_order_check, kernel_positivity_check

_FIXTURES = {"rn": "R_N", "pn": "P_N", "r2": "R2_2N", "fn": "F_N"}


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def _emit(rows, header, fmt, out):
    """rows: list of dicts sharing `header` keys."""
    if fmt == "json":
        payload = [{k: r[k] for k in header} for r in rows]
        out.write(json.dumps(payload, sort_keys=True, indent=2))
        out.write("\n")
    else:
        out.write(",".join(header) + "\n")
        for r in rows:
            out.write(",".join(_fmt(r[k]) for k in header) + "\n")


def _cmd_eval(args, out) -> int:
    if args.target == "loggamma":
        b = expansions.loggamma(args.x, args.tol)
        row = {"x": args.x, "lower": b.lower, "upper": b.upper,
               "midpoint": b.midpoint, "width": b.width, "n_used": b.n_used}
        _emit([row], list(row), args.format, out)
    elif args.target == "loggamma2":
        g = expansions.loggamma2(args.w, args.M, args.tol)
        row = {"w": args.w, "M": g.M, "main": g.main,
               "remainder": g.remainder, "value": g.value,
               "sign_check": g.sign_check}
        _emit([row], list(row), args.format, out)
    elif args.target == "vkernel":
        if args.rep == "series":
            value = kernels.v_series(args.n, args.t, args.tol).value
        elif args.rep == "recursion":
            value = kernels.v_recursion(args.n, args.t)
        else:
            value = kernels.v_integral(args.n, args.t)
        row = {"n": args.n, "t": args.t, "rep": args.rep, "value": value}
        _emit([row], list(row), args.format, out)
    else:  # remainder
        if args.family == "euler":
            value = ((-1.0) ** args.n
                     * quadrature.laplace(KernelId(KernelKind.R, args.n),
                                          args.x, args.tol).value)
        elif args.family == "barnesg":
            value = expansions.barnesg_remainder(args.n, args.x, args.tol)
        else:
            # the double-gamma remainder for the even truncation M = 2n
            value = expansions.r2_remainder(args.x, 2 * args.n, args.tol)
        row = {"family": args.family, "n": args.n, "x": args.x, "value": value}
        _emit([row], list(row), args.format, out)
    return 0


def _cmd_table(args, out) -> int:
    table = default_table()
    rows = []
    for k in range(args.max + 1):
        b = (table.double_bernoulli_number(k) if args.double
             else table.bernoulli_number(k))
        rows.append({"index": k, "numerator": b.numerator,
                     "denominator": b.denominator})
    _emit(rows, ["index", "numerator", "denominator"], args.format, out)
    return 0


def _report_out(report, fmt, out) -> int:
    if fmt == "json":
        out.write(report.to_json(indent=2))
        out.write("\n")
    else:
        out.write("diff_order,x,h,margin\n")
        for m, x, h, margin in report.margins:
            out.write(f"{m},{_fmt(x)},{_fmt(h)},{_fmt(margin)}\n")
        out.write(f"# label={report.label} min_margin={_fmt(report.min_margin)}"
                  f" tolerance={_fmt(report.tolerance_used)}"
                  f" verdict={report.verdict}\n")
    return 0 if report.verdict else 1


def _cmd_verify(args, out) -> int:
    if args.what == "cm":
        fixture = expansions.cm_fixture(_FIXTURES[args.fixture], args.n)
        spec = CMOrderSpec(r=float(args.order), max_diff_order=args.max_diff)
        report = cm_order_check(
            fixture, spec,
            label=f"{args.fixture} n={args.n} order={args.order}")
        return _report_out(report, args.format, out)
    if args.what == "kernels":
        grid = np.geomspace(1e-3, 50.0, 20)
        n = args.n
        code = 0
        for kind, max_l in ((KernelKind.R, n), (KernelKind.LAMBDA, n - 1),
                            (KernelKind.P, n - 1)):
            report = kernel_positivity_check(
                KernelId(kind, n), range(max_l + 1), grid)
            code |= _report_out(report, args.format, out)
        return code
    # verify all
    results = verification.verify_all()
    report = verification.render_report(results)
    out.write(report)
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="gammacm",
        description="Evaluate gamma-function expansions with certified "
                    "remainders and verify their complete monotonicity.")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    sub = p.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate a function or remainder")
    evsub = ev.add_subparsers(dest="target", required=True)
    lg = evsub.add_parser("loggamma")
    lg.add_argument("--x", type=float, required=True)
    lg.add_argument("--tol", type=float, default=1e-12)
    lg2 = evsub.add_parser("loggamma2")
    lg2.add_argument("--w", type=float, required=True)
    lg2.add_argument("--M", type=int, required=True)
    lg2.add_argument("--tol", type=float, default=1e-10)
    vk = evsub.add_parser("vkernel")
    vk.add_argument("--n", type=int, required=True)
    vk.add_argument("--t", type=float, required=True)
    vk.add_argument("--rep", choices=("series", "recursion", "integral"),
                    default="series")
    vk.add_argument("--tol", type=float, default=1e-12)
    rm = evsub.add_parser("remainder")
    rm.add_argument("--family", choices=("euler", "barnesg", "gamma2"),
                    required=True)
    rm.add_argument("--n", type=int, required=True)
    rm.add_argument("--x", type=float, required=True)
    rm.add_argument("--tol", type=float, default=1e-10)

    tb = sub.add_parser("table", help="print exact rational tables")
    tbsub = tb.add_subparsers(dest="target", required=True)
    bn = tbsub.add_parser("bernoulli")
    bn.add_argument("--max", type=int, required=True)
    bn.add_argument("--double", action="store_true")

    vf = sub.add_parser("verify", help="run verification checks")
    vfsub = vf.add_subparsers(dest="what", required=True)
    cm = vfsub.add_parser("cm")
    cm.add_argument("--fixture", choices=sorted(_FIXTURES), required=True)
    cm.add_argument("--n", type=int, required=True)
    cm.add_argument("--order", type=int, required=True)
    cm.add_argument("--max-diff", type=int, default=8)
    kn = vfsub.add_parser("kernels")
    kn.add_argument("--n", type=int, required=True)
    vfsub.add_parser("all")
    return p


def run(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        if args.command == "eval":
            return _cmd_eval(args, out)
        if args.command == "table":
            return _cmd_table(args, out)
        return _cmd_verify(args, out)
    except GammaCMError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command-line surface: dims, curve, rate, oracle, check.

Exit codes: 0 ok, 2 carpet spec error, 3 I/O error, 4 domain/regime error.
All reals print with 12 significant digits; output is deterministic for
fixed inputs.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import lower, oracle, upper
from .carpet import Carpet, has_uniform_fibres, load_carpet
from .dimensions import box_dim, hausdorff_dim
from .errors import (CarpetError, DomainError, InvalidSpec, RegimeError,
                     ThetaOutOfRange, UniformFibres)
from .rate import RateFunction

EXIT_OK = 0
EXIT_SPEC = 2
EXIT_IO = 3
EXIT_DOMAIN = 4

CURVE_HEADER = ("theta", "upper2", "upper3", "lower_psi", "lower_linear",
                "lower_ffk", "lower_env", "hdim", "bdim")

SANDWICH_TOL = 1e-9


@dataclass(frozen=True)
class CurvePoint:
    theta: float
    upper2: float
    upper3: float | None
    lower_psi: float
    lower_linear: float
    lower_ffk: float
    lower_env: float
    hdim: float
    bdim: float


def fmt(x: float) -> str:
    return f"{x:.12g}"


def theta_grid(carpet: Carpet, grid_size: int) -> list[float]:
    """Uniform grid on [0, 1] with the breakpoint log_n m inserted exactly."""
    vals = [i / (grid_size - 1) for i in range(grid_size)]
    r = carpet.r
    if all(abs(v - r) > 1e-12 for v in vals):
        vals.append(r)
        vals.sort()
    return vals


def curve_points(carpet: Carpet, grid_size: int = 200,
                 include3: bool = False) -> list[CurvePoint]:
    hdim = hausdorff_dim(carpet)
    bdim = box_dim(carpet)
    uniform = has_uniform_fibres(carpet)
    rf = RateFunction(carpet)
    points = []
    for theta in theta_grid(carpet, grid_size):
        up2 = upper.upper_bound(carpet, theta, rate_fn=rf)
        up3 = None
        if (include3 and not uniform
                and carpet.r + 0.01 <= theta <= 0.99):
            up3 = upper.improved_upper(carpet, theta).bound
        lpsi = lower.lower_thm(carpet, theta).psi
        llin = lower.lower_linear_box(carpet, theta)
        lffk = lower.lower_ffk(carpet, theta)
        points.append(CurvePoint(
            theta=theta, upper2=up2, upper3=up3,
            lower_psi=lpsi, lower_linear=llin, lower_ffk=lffk,
            lower_env=max(lpsi, llin, lffk), hdim=hdim, bdim=bdim))
    return points


def curve_csv(points: list[CurvePoint]) -> str:
    buf = io.StringIO()
    buf.write(",".join(CURVE_HEADER) + "\n")
    for p in points:
        cells = [fmt(p.theta), fmt(p.upper2),
                 fmt(p.upper3) if p.upper3 is not None else "",
                 fmt(p.lower_psi), fmt(p.lower_linear), fmt(p.lower_ffk),
                 fmt(p.lower_env), fmt(p.hdim), fmt(p.bdim)]
        buf.write(",".join(cells) + "\n")
    return buf.getvalue()


def _parse_theta(text: str):
    if "/" in text:
        return Fraction(text)
    return float(text)


def cmd_dims(args) -> int:
    carpet = load_carpet(args.spec)
    hdim, bdim = hausdorff_dim(carpet), box_dim(carpet)
    uniform = has_uniform_fibres(carpet)
    if args.json:
        print(json.dumps({
            "m": carpet.m, "n": carpet.n, "N": carpet.N, "M": carpet.M,
            "col_counts": list(carpet.col_counts),
            "hausdorff": hdim, "box": bdim, "gap": bdim - hdim,
            "uniform_fibres": uniform,
            "c": carpet.c, "mean_log_n": carpet.mean_log_n, "r": carpet.r,
        }, indent=2))
        return EXIT_OK
    print(f"m = {carpet.m}   n = {carpet.n}")
    print(f"N = {carpet.N}   M = {carpet.M}   "
          f"column counts = {list(carpet.col_counts)}")
    print(f"dim_H = {fmt(hdim)}")
    print(f"dim_B = {fmt(bdim)}")
    print(f"gap   = {fmt(bdim - hdim)}")
    print(f"log(N/M) = {fmt(carpet.c)}   mean log fibre = "
          f"{fmt(carpet.mean_log_n)}   log_n m = {fmt(carpet.r)}")
    if uniform:
        print("uniform vertical fibres: bounds coincide")
    return EXIT_OK


def cmd_curve(args) -> int:
    carpet = load_carpet(args.spec)
    if args.grid < 2:
        raise DomainError(f"grid size must be >= 2, got {args.grid}")
    points = curve_points(carpet, grid_size=args.grid,
                          include3=args.include_three_scale)
    text = curve_csv(points)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
        if not args.no_plot:
            from .plotting import render_curve
            png = str(args.out)
            png = png[:-4] + ".png" if png.endswith(".csv") else png + ".png"
            try:
                render_curve(points, png,
                             title=f"m={carpet.m}, n={carpet.n}, N={carpet.N}")
            except OSError as exc:
                print(f"error: cannot write {png}: {exc}", file=sys.stderr)
                return EXIT_IO
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_rate(args) -> int:
    carpet = load_carpet(args.spec)
    rf = RateFunction(carpet)
    rows = []
    for x in args.x:
        try:
            ev = rf.evaluate(x)
        except DomainError:
            lo = carpet.mean_log_n
            hi = max(math.log(v) for v in carpet.col_counts)
            print(f"error: x={fmt(x)} outside the valid interval "
                  f"[{fmt(lo)}, {fmt(hi)}]", file=sys.stderr)
            return EXIT_DOMAIN
        rows.append(ev)
    if args.json:
        print(json.dumps([{"x": ev.x, "rate": ev.value,
                           "lambda_star": ev.lambda_star} for ev in rows]))
        return EXIT_OK
    print(f"{'x':>18} {'I(x)':>18} {'lambda*':>18}")
    for ev in rows:
        lam = "inf" if math.isinf(ev.lambda_star) else fmt(ev.lambda_star)
        print(f"{fmt(ev.x):>18} {fmt(ev.value):>18} {lam:>18}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    carpet = load_carpet(args.spec)
    theta = _parse_theta(args.theta)
    theta_f = float(theta)
    if theta_f < carpet.r - 1e-12 or theta_f >= 1.0:
        raise RegimeError(
            f"theta={fmt(theta_f)} outside [log_n m, 1) = "
            f"[{fmt(carpet.r)}, 1); the subdivision counting changes "
            "regime below log_n m")
    delta0 = args.delta0
    s = args.s
    if delta0 is None:
        if has_uniform_fibres(carpet):
            delta0 = 0.05  # any positive value: every window is bad
        else:
            delta0 = upper.solve_delta0(carpet, theta_f).delta0
    if s is None:
        s = upper.upper_bound(carpet, theta_f)
    report = oracle.cover_cost_log(carpet, args.K, theta, delta0, s)
    if args.json:
        print(json.dumps({
            "K": report.K, "theta": report.theta, "delta0": report.delta0,
            "s": report.s, "window": report.window,
            "log10_good": report.log10_good, "log10_bad": report.log10_bad,
            "log10_total": report.log10_total,
            "good_exact": report.good_exact, "bad_exact": report.bad_exact,
            "bad_exponent": report.bad_exponent,
            "asymptotic_bad_exponent": report.asymptotic_bad_exponent,
            "log10_cost_bad": report.log10_cost_bad,
            "log10_cost_good": report.log10_cost_good,
            "log10_cost_total": report.log10_cost_total,
        }))
        return EXIT_OK
    print(f"K = {report.K}   theta = {fmt(report.theta)}   "
          f"delta0 = {fmt(report.delta0)}   s = {fmt(report.s)}")
    print(f"window length              = {report.window}")
    print(f"log10 #good / #bad / total = {fmt(report.log10_good)} / "
          f"{fmt(report.log10_bad)} / {fmt(report.log10_total)}")
    if report.good_exact is not None:
        print(f"exact #good / #bad         = {report.good_exact} / "
              f"{report.bad_exact}")
    print(f"bad exponent               = {fmt(report.bad_exponent)}")
    print(f"asymptotic bad exponent    = {fmt(report.asymptotic_bad_exponent)}")
    print(f"|difference|               = "
          f"{fmt(abs(report.bad_exponent - report.asymptotic_bad_exponent))}")
    print(f"log10 cost bad / good / total = {fmt(report.log10_cost_bad)} / "
          f"{fmt(report.log10_cost_good)} / {fmt(report.log10_cost_total)}")
    return EXIT_OK


def cmd_check(args) -> int:
    try:
        with open(args.csv, "r", encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            header = tuple(next(reader))
            rows = list(reader)
    except OSError as exc:
        print(f"error: cannot read {args.csv}: {exc}", file=sys.stderr)
        return EXIT_IO
    if header != CURVE_HEADER:
        print(f"error: unexpected header {header}", file=sys.stderr)
        return EXIT_DOMAIN
    bad = 0
    for lineno, row in enumerate(rows, start=2):
        vals = dict(zip(CURVE_HEADER, row))
        hdim, env = float(vals["hdim"]), float(vals["lower_env"])
        up2, bdim = float(vals["upper2"]), float(vals["bdim"])
        ok = (hdim <= env + SANDWICH_TOL
              and env <= up2 + SANDWICH_TOL
              and up2 <= bdim + SANDWICH_TOL)
        if vals["upper3"]:
            ok = ok and float(vals["upper3"]) <= up2 + SANDWICH_TOL
        if not ok:
            bad += 1
            print(f"line {lineno}: ordering violated: {row}", file=sys.stderr)
    if bad:
        print(f"{bad} of {len(rows)} rows violate the bound ordering",
              file=sys.stderr)
        return EXIT_DOMAIN
    print(f"ok: {len(rows)} rows satisfy the bound ordering")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="carpetdim",
        description="Bounds on intermediate dimensions of grid carpets")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dims", help="dimension summary")
    p.add_argument("spec")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("curve", help="per-theta bound curve as CSV (+ figure)")
    p.add_argument("spec")
    p.add_argument("--grid", type=int, default=200)
    p.add_argument("--include-three-scale", action="store_true")
    p.add_argument("--out", default=None)
    p.add_argument("--no-plot", action="store_true")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("rate", help="rate function table")
    p.add_argument("spec")
    p.add_argument("--x", type=float, action="append", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_rate)

    p = sub.add_parser("oracle", help="exact finite-depth counting report")
    p.add_argument("spec")
    p.add_argument("--theta", required=True,
                   help="float or rational like 3/4")
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--s", type=float, default=None)
    p.add_argument("--delta0", type=float, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("check", help="validate a curve CSV's bound ordering")
    p.add_argument("csv")
    p.set_defaults(func=cmd_check)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidSpec as exc:
        print(f"error: invalid carpet spec: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (DomainError, RegimeError, ThetaOutOfRange, UniformFibres) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except CarpetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())

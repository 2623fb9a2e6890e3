"""Command-line front end: every experiment and figure table as CSV or JSON.

Exit codes: 0 success, 2 usage error, 1 computation error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import analysis, dynamic, gallery, static
from .errors import AsymlogError
from .maps import MapKind, MapSpec, bifurcation_scan, iterate

__all__ = ["main", "build_parser"]


class UsageError(Exception):
    pass


def _positive(v: str) -> float:
    try:
        x = float(v)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {v!r}") from None
    if not (x > 0 and math.isfinite(x)):
        raise argparse.ArgumentTypeError(f"must be a positive finite number: {v!r}")
    return x


def _natural(v: str) -> int:
    try:
        x = int(v)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {v!r}") from None
    if x < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {v!r}")
    return x


def _common(p, *, epsilon=True, order=False, n_max=None, variant=False, fmt="csv"):
    if epsilon:
        p.add_argument("--epsilon", "-e", type=_positive, default=0.02, help="small parameter (default 0.02)")
    if order:
        p.add_argument("--order", type=_natural, default=1, help="truncation order (default 1)")
    if n_max is not None:
        p.add_argument("--n-max", type=_natural, default=n_max, help=f"last n (default {n_max})")
    if variant:
        p.add_argument(
            "--variant",
            choices=[v.value for v in dynamic.Variant],
            default=dynamic.Variant.EPS_CUBED.value,
            help="power of eps in the composite denominator (default eps3)",
        )
    p.add_argument("--output", "-o", default=None, help="write to this file instead of standard output")
    p.add_argument("--format", choices=["csv", "json"], default=fmt, help=f"output format (default {fmt})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="asymlog",
        description="Multiple-scales and matched asymptotics for the logistic map near period doubling.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("simulate", help="iterate one of the maps", description=(
        "Iterate a map: static (lambda = 3 + eps), dynamic (lambda = 3 + eps^2 n), or one of the gallery maps "
        "regular, bl, decay, blowup."))
    p.add_argument("--map", dest="map_kind", choices=[k.value for k in MapKind], default="static")
    p.add_argument("--x0", type=float, default=None, help="initial value (default depends on map)")
    p.add_argument("--theta", type=_positive, default=1.0, help="initial value of the blow-up map")
    _common(p, n_max=100)

    p = sub.add_parser("bifurcation", help="long-run logistic values over a lambda grid", description=(
        "Bifurcation diagram of the logistic map: values visited after a transient, on a lambda grid."))
    p.add_argument("--lambda-min", type=float, default=2.45)
    p.add_argument("--lambda-max", type=float, default=3.8)
    p.add_argument("--n-lambda", type=_natural, default=136)
    _common(p, epsilon=False)

    p = sub.add_parser("static-early", help="early-time multiple-scales series, lambda = 3 + eps", description=(
        "Exact trajectory beside the early-time two-timing series x = 2/3 + eps sum eps^r X_r, truncated at --order."))
    _common(p, order=True, n_max=200)

    p = sub.add_parser("static-composite", help="uniform composite, lambda = 3 + eps", description=(
        "Exact trajectory beside the two-term composite that joins the early series to the saturated 2-cycle."))
    _common(p, n_max=300)

    p = sub.add_parser("dynamic-early", help="early-time approximation, lambda = 3 + eps^2 n", description=(
        "Exact swept trajectory beside the adiabatic manifold plus the exp(t^2/2) mode (--order 0 or 1)."))
    _common(p, order=True, n_max=300)

    p = sub.add_parser("dynamic-composite", help="uniform composite, lambda = 3 + eps^2 n", description=(
        "Exact swept trajectory beside the Dawson/erfi composite; --variant picks the eps power."))
    _common(p, n_max=1000, variant=True)

    p = sub.add_parser("k-solve", help="transition constant K with eps^3 exp(K^2)/K = 1", description=(
        "Solve eps^3 exp(K^2) / K = 1 for the transition time of the swept map."))
    _common(p, fmt="json")

    p = sub.add_parser("error-scan", help="log-log error scaling", description=(
        "Error against eps with a fitted log-log slope. static: sup-norm composite error on [0, 3 n*]; "
        "dynamic-a: composite at n = floor(1/eps); dynamic-b/c: fixed s = 1 and s = 15 with branch selection."))
    p.add_argument("which", choices=["static", "dynamic-a", "dynamic-b", "dynamic-c"])
    p.add_argument("--epsilons", type=lambda v: [_positive(x) for x in v.split(",")], default=None,
                   help="comma-separated eps ladder")
    _common(p, epsilon=False, variant=True)

    p = sub.add_parser("figure", help="data table behind figure 1..9", description=(
        "Data for the nine figures: 1 bifurcation diagram; 2 static trajectory with equilibria; 3 early series; "
        "4 static composite; 5 static error scaling; 6 swept trajectory with manifolds; 7 swept early "
        "approximation; 8 swept composite; 9 swept error scaling."))
    p.add_argument("which", type=int, choices=range(1, 10), metavar="{1..9}")
    _common(p, epsilon=False)

    p = sub.add_parser("gallery", help="diagnostics for the four gallery maps", description=(
        "regular: uniform two-term expansion; bl: balance change near x ~ sqrt(eps); decay: slow decay then "
        "balance change; blowup: continuous approximant blows up, discrete map does not."))
    p.add_argument("which", choices=["regular", "bl", "decay", "blowup"])
    p.add_argument("--theta", type=_positive, default=1.0)
    _common(p, fmt="json")
    p.set_defaults(epsilon=None)

    p = sub.add_parser("resolve-exponent", help="choose the eps power in the swept composite", description=(
        "Fit fixed-s error slopes for both eps powers in the composite denominator and report which gives slope 1."))
    p.add_argument("--epsilons", type=lambda v: [_positive(x) for x in v.split(",")], default=None)
    _common(p, epsilon=False, fmt="json")
    return parser


# -- output -----------------------------------------------------------------------


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else None
    return v


def _render_table(header, rows, fmt) -> str:
    if fmt == "csv":
        return analysis.to_csv(header, rows)
    records = [dict(zip(header, (_jsonable(x) for x in row))) for row in rows]
    return json.dumps(records, sort_keys=True) + "\n"


def _render_record(record: dict, fmt) -> str:
    record = _jsonable(record)
    if fmt == "json":
        return json.dumps(record, sort_keys=True) + "\n"
    keys = sorted(record)
    vals = [json.dumps(record[k], sort_keys=True) if isinstance(record[k], (dict, list)) else record[k] for k in keys]
    vals = ["" if v is None else v for v in vals]
    return analysis.to_csv(keys, [vals])


# -- commands ---------------------------------------------------------------------


def _exact(kind, eps, N):
    return analysis.exact_trajectory(kind, eps, max(N, 1))[: N + 1]


def _run(args) -> str:
    cmd, fmt = args.command, args.format
    if cmd == "simulate":
        spec = MapSpec(args.map_kind, args.epsilon, x0=args.x0, theta=args.theta)
        if args.n_max < 1:
            raise UsageError("--n-max must be >= 1")
        traj = iterate(spec, args.n_max)
        return _render_table(("n", "t", "x"), zip(traj.n, traj.t, traj.x), fmt)
    if cmd == "bifurcation":
        scan = bifurcation_scan(args.lambda_min, args.lambda_max, args.n_lambda)
        return _render_table(("lambda", "x"), scan.rows(), fmt)
    if cmd == "static-early":
        eps, N = args.epsilon, args.n_max
        series = static.build_early_static(args.order)
        x = _exact("static", eps, N)
        rows = []
        for n in range(N + 1):
            try:
                approx = static.eval_early_static(series, n, eps)
            except OverflowError:
                approx = math.nan
            rows.append((n, x[n], approx))
        return _render_table(("n", "x_exact", "x_early"), rows, fmt)
    if cmd == "static-composite":
        eps, N = args.epsilon, args.n_max
        n = np.arange(N + 1)
        return _render_table(("n", "x_exact", "x_composite"),
                             zip(n, _exact("static", eps, N), static.composite_static(n, eps)), fmt)
    if cmd == "dynamic-early":
        eps, N = args.epsilon, args.n_max
        if args.order > 1:
            raise UsageError("dynamic-early supports --order 0 or 1")
        n = np.arange(N + 1)
        return _render_table(("n", "x_exact", "x_early"),
                             zip(n, _exact("dynamic", eps, N), dynamic.early_dynamic(n, eps, args.order)), fmt)
    if cmd == "dynamic-composite":
        eps, N = args.epsilon, args.n_max
        n = np.arange(N + 1)
        comp = dynamic.composite_dynamic(n, eps, dynamic.Variant(args.variant))
        return _render_table(("n", "x_exact", "x_composite"), zip(n, _exact("dynamic", eps, N), comp), fmt)
    if cmd == "k-solve":
        k = dynamic.solve_K(args.epsilon)
        n_star, frame = dynamic.dynamic_breakdown(args.epsilon, k)
        return _render_record({"epsilon": k.epsilon, "K": k.K, "residual": k.residual,
                               "iterations": k.iterations, "n_star": n_star}, fmt)
    if cmd == "error-scan":
        variant = dynamic.Variant(args.variant)
        if args.which == "static":
            rep = analysis.static_error_scan(args.epsilons or analysis.STATIC_LADDER)
        else:
            rep = analysis.dynamic_error_scan(args.which[-1], args.epsilons, variant)
        return _render_table(("epsilon", "n", "error", "fitted_slope", "fit_r2"), rep.rows(), fmt)
    if cmd == "figure":
        table = analysis.figure_data(args.which)
        return _render_table(table.header, table.rows, fmt)
    if cmd == "gallery":
        defaults = {"regular": 0.05, "bl": 1e-4, "decay": 1e-4, "blowup": 1e-3}
        eps = defaults[args.which] if args.epsilon is None else args.epsilon
        if args.which == "regular":
            d = gallery.gallery_regular_check(eps)
        elif args.which == "bl":
            d = gallery.gallery_boundary_layer_check(eps)
        elif args.which == "decay":
            d = gallery.gallery_decay_check(eps)
        else:
            d = gallery.gallery_blowup_check(eps, args.theta)
        return _render_record(d.as_dict(), fmt)
    if cmd == "resolve-exponent":
        dec = analysis.exponent_resolution(args.epsilons or analysis.DYNAMIC_BC_LADDER)
        return _render_record(dec.as_dict(), fmt)
    raise UsageError(f"unknown command {cmd!r}")  # pragma: no cover


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = _run(args)
    except UsageError as exc:
        print(f"asymlog: usage error: {exc}", file=sys.stderr)
        return 2
    except (AsymlogError, ValueError, OverflowError, ArithmeticError) as exc:
        print(f"asymlog: error: {exc}", file=sys.stderr)
        return 1
    if args.output:
        with open(args.output, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

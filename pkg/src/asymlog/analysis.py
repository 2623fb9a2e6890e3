"""Error measurement, log-log slope fits and figure data tables."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import dynamic, static
from .errors import DegenerateFit, UnknownFigure
from .manifolds import adiabatic_period1, equilibrium_period1, equilibrium_period2
from .maps import MapKind, MapSpec, bifurcation_scan, iterate, n_for_lambda

__all__ = [
    "ErrorReport",
    "slope_fit",
    "exact_trajectory",
    "approximant_values",
    "sup_norm_error",
    "static_error_scan",
    "residual_order_check",
    "early_static_error",
    "nearest_by_parity",
    "dynamic_point_error",
    "dynamic_error_scan",
    "plateau_deviation",
    "ExponentDecision",
    "exponent_resolution",
    "FigureTable",
    "figure_data",
    "to_csv",
    "STATIC_LADDER",
    "DYNAMIC_A_LADDER",
    "DYNAMIC_BC_LADDER",
]

STATIC_LADDER = (0.04, 0.02, 0.01, 0.005, 0.0025)
DYNAMIC_A_LADDER = (0.02, 0.014, 0.01, 0.007, 0.005)
DYNAMIC_BC_LADDER = (0.014, 0.01, 0.007, 0.005)
RESIDUAL_LADDER = (0.04, 0.02, 0.01, 0.005)


@dataclass(frozen=True)
class ErrorReport:
    epsilons: tuple[float, ...]
    errors: tuple[float, ...]
    fitted_slope: float
    fit_r2: float
    intercept: float = 0.0
    n_values: tuple[int, ...] = field(default=())

    def rows(self):
        for i, (e, err) in enumerate(zip(self.epsilons, self.errors)):
            n = self.n_values[i] if self.n_values else ""
            yield e, n, err, self.fitted_slope, self.fit_r2


def slope_fit(report_points: Sequence[tuple[float, float]], n_values=()) -> ErrorReport:
    """Least-squares line through (log eps, log error)."""
    pts = sorted((float(e), float(err)) for e, err in report_points)
    if len(pts) < 3:
        raise ValueError("need at least three points")
    eps = np.array([p[0] for p in pts])
    err = np.array([p[1] for p in pts])
    if np.any(eps <= 0) or np.any(err <= 0):
        raise ValueError("epsilons and errors must be positive")
    if np.ptp(eps) == 0:
        raise DegenerateFit("all epsilons are equal")
    x, y = np.log(eps), np.log(err)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    return ErrorReport(
        epsilons=tuple(eps.tolist()),
        errors=tuple(err.tolist()),
        fitted_slope=float(slope),
        fit_r2=min(max(r2, 0.0), 1.0),
        intercept=float(intercept),
        n_values=tuple(n_values),
    )


# -- exact solutions and approximants ---------------------------------------------


@lru_cache(maxsize=64)
def _exact(kind: str, epsilon: float, N: int) -> np.ndarray:
    return iterate(MapSpec(MapKind(kind), epsilon), N).x


def exact_trajectory(kind: str, epsilon: float, N: int) -> np.ndarray:
    return _exact(MapKind(kind).value, float(epsilon), int(N))


@lru_cache(maxsize=16)
def _series(order: int) -> static.EarlySeriesStatic:
    return static.build_early_static(order)


def approximant_values(name: str, epsilon: float, n) -> np.ndarray:
    """Evaluate a named approximant at integer times ``n``.

    Names: static-exact, static-composite, static-early-<order>,
    dynamic-exact, dynamic-early-<0|1>, dynamic-composite,
    dynamic-composite-eps3/2.
    """
    n = np.asarray(n, dtype=int)
    if name in ("static-exact", "dynamic-exact"):
        return exact_trajectory(name.split("-")[0], epsilon, int(n.max()))[n]
    if name == "static-composite":
        return np.asarray(static.composite_static(n, epsilon), dtype=float)
    if name.startswith("static-early-"):
        order = int(name.rsplit("-", 1)[1])
        series = _series(order)
        return np.array([static.eval_early_static(series, int(k), epsilon, order) for k in n])
    if name.startswith("dynamic-early-"):
        order = int(name.rsplit("-", 1)[1])
        return np.asarray(dynamic.early_dynamic(n, epsilon, order), dtype=float)
    if name == "dynamic-composite":
        return np.asarray(dynamic.composite_dynamic(n, epsilon, dynamic.Variant.EPS_CUBED), dtype=float)
    if name == "dynamic-composite-eps3/2":
        return np.asarray(dynamic.composite_dynamic(n, epsilon, dynamic.Variant.EPS_THREE_HALVES), dtype=float)
    raise ValueError(f"unknown approximant {name!r}")


def _kind_of(name: str) -> str:
    return "dynamic" if name.startswith("dynamic") else "static"


def _sup_and_argmax(epsilon, approximant, n_range):
    n0, n1 = int(n_range[0]), int(n_range[1])
    if n1 < n0 or n0 < 0:
        raise ValueError("bad n range")
    n = np.arange(n0, n1 + 1)
    exact = exact_trajectory(_kind_of(approximant), epsilon, max(n1, 1))[n]
    err = np.abs(exact - approximant_values(approximant, epsilon, n))
    k = int(np.argmax(err))
    return float(err[k]), int(n[k])


def sup_norm_error(epsilon: float, approximant: str, n_range: tuple[int, int]) -> float:
    """max_{n0 <= n <= n1} |x(n) - approximant(n)|."""
    return _sup_and_argmax(epsilon, approximant, n_range)[0]


def static_error_scan(epsilons=STATIC_LADDER, span: float = 3.0) -> ErrorReport:
    """Sup-norm error of the static composite on [0, span * n*]."""
    pts, ns = [], []
    for eps in sorted(epsilons):
        n_star, _ = static.static_breakdown(eps)
        err, n_at = _sup_and_argmax(eps, "static-composite", (0, int(span * n_star)))
        pts.append((eps, err))
        ns.append(n_at)
    return slope_fit(pts, n_values=ns)


def residual_order_check(order: int, t_eval: float = 1.0, epsilons=RESIDUAL_LADDER) -> ErrorReport:
    """Defect of the order-truncated early series in the rescaled map.

    Evaluated at slow time ``t_eval`` (worse of the two parities); the slope
    should be order + 1.
    """
    if order > 6:
        raise ValueError("order must be <= 6")
    series = _series(order)
    pts = []
    for eps in epsilons:
        r = max(abs(static.series_residual(series, eps, t_eval, p)) for p in (0, 1))
        pts.append((eps, r))
    return slope_fit(pts)


def nearest_by_parity(target: float) -> tuple[int, int]:
    """Nearest even and nearest odd integer to ``target`` (ties go down)."""
    out = []
    for parity in (0, 1):
        base = math.floor(target)
        cands = [k for k in range(base - 2, base + 3) if k % 2 == parity and k >= 0]
        out.append(min(cands, key=lambda k: (abs(k - target), k)))
    return out[0], out[1]


def early_static_error(epsilon: float, n_target: float, order: int = 0) -> tuple[int, float]:
    """Early-series error near ``n_target`` on the worse of the two branches."""
    cands = nearest_by_parity(n_target)
    N = max(cands)
    exact = exact_trajectory("static", epsilon, N)
    series = _series(order)
    best = (cands[0], -1.0)
    for n in cands:
        err = abs(exact[n] - static.eval_early_static(series, n, epsilon, order))
        if err > best[1]:
            best = (n, err)
    return best


def _dynamic_target(epsilon: float, rule: str, K: float) -> float:
    if rule == "a":
        return float(math.floor(1.0 / epsilon))
    if rule == "b":
        return (K + 1.0 / K) / epsilon
    if rule == "c":
        return (K + 15.0 / K) / epsilon
    raise ValueError(f"rule must be a, b or c, got {rule!r}")


def dynamic_point_error(
    epsilon: float,
    rule: str,
    variant=dynamic.Variant.EPS_CUBED,
    branch_select: bool = True,
) -> tuple[int, float]:
    """Composite error at one of the three sampling points.

    a: n = floor(1/eps); b: n ~ (K + 1/K)/eps; c: n ~ (K + 15/K)/eps.  With
    ``branch_select`` the nearest n of each parity is tried and the larger
    error is reported.
    """
    K = dynamic.solve_K(epsilon).K
    target = _dynamic_target(epsilon, rule, K)
    cands = nearest_by_parity(target) if branch_select else (int(round(target)),)
    exact = exact_trajectory("dynamic", epsilon, max(cands))
    best = (cands[0], -1.0)
    for n in cands:
        err = abs(exact[n] - dynamic.composite_dynamic(n, epsilon, variant))
        if err > best[1]:
            best = (n, err)
    return best


def dynamic_error_scan(rule: str, epsilons=None, variant=dynamic.Variant.EPS_CUBED, branch_select: bool = True) -> ErrorReport:
    if epsilons is None:
        epsilons = DYNAMIC_A_LADDER if rule == "a" else DYNAMIC_BC_LADDER
    pts, ns = [], []
    for eps in sorted(epsilons):
        n, err = dynamic_point_error(eps, rule, variant, branch_select)
        pts.append((eps, err))
        ns.append(n)
    return slope_fit(pts, n_values=ns)


def plateau_deviation(epsilon: float = 0.01, s_range=(10.0, 15.0), variant=dynamic.Variant.EPS_CUBED, samples: int = 51) -> float:
    """max relative gap between the composite amplitude and sqrt(eps^2 n)/3."""
    K = dynamic.solve_K(epsilon).K
    s = np.linspace(s_range[0], s_range[1], samples)
    n = np.unique(np.round((K + s / K) / epsilon).astype(int))
    _, amp = dynamic.composite_envelope(n, epsilon, variant)
    target = np.sqrt(epsilon**2 * n) / 3.0
    return float(np.max(np.abs(amp - target) / target))


@dataclass(frozen=True)
class ExponentDecision:
    epsilons: tuple[float, ...]
    slopes: dict
    mean_errors: dict
    plateau: dict
    passing: tuple[str, ...]
    chosen: str | None
    inconclusive: bool

    def as_dict(self):
        return {
            "epsilons": list(self.epsilons),
            "slopes": self.slopes,
            "mean_errors": self.mean_errors,
            "plateau_relative_deviation": self.plateau,
            "passing": list(self.passing),
            "chosen": self.chosen,
            "inconclusive": self.inconclusive,
        }


def exponent_resolution(epsilons=DYNAMIC_BC_LADDER, band: float = 0.3) -> ExponentDecision:
    """Decide which power of eps in the composite denominator fits the data.

    A variant passes when both fixed-s error scans (points b and c) have
    slope within ``band`` of 1; among passing variants the one with the
    smaller mean error is chosen.
    """
    eps = tuple(sorted(epsilons))
    if len(eps) < 4 or max(eps) > 0.02:
        raise ValueError("need at least four epsilons, all <= 0.02")
    slopes, mean_err, plateau, passing = {}, {}, {}, []
    for variant in dynamic.Variant:
        b = dynamic_error_scan("b", eps, variant)
        c = dynamic_error_scan("c", eps, variant)
        slopes[variant.value] = {"b": b.fitted_slope, "c": c.fitted_slope}
        mean_err[variant.value] = float(np.mean(b.errors + c.errors))
        plateau[variant.value] = plateau_deviation(0.01, variant=variant)
        if all(abs(r.fitted_slope - 1.0) <= band for r in (b, c)):
            passing.append(variant.value)
    chosen = min(passing, key=lambda v: mean_err[v]) if len(passing) == 1 else None
    return ExponentDecision(
        epsilons=eps,
        slopes=slopes,
        mean_errors=mean_err,
        plateau=plateau,
        passing=tuple(passing),
        chosen=chosen,
        inconclusive=len(passing) != 1,
    )


# -- figure tables ---------------------------------------------------------------


@dataclass(frozen=True)
class FigureTable:
    header: tuple[str, ...]
    rows: list

    def to_csv(self) -> str:
        return to_csv(self.header, self.rows)


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, str):
        return v
    return "%.17g" % float(v)


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


FIGURE_DEFAULTS = {
    1: dict(lambda_min=2.45, lambda_max=3.8, n_lambda=136, transient=2000, record=64),
    2: dict(epsilon=0.02, n_max=300),
    3: dict(epsilon=0.02, n_max=200),
    4: dict(epsilon=0.02, n_max=300),
    5: dict(epsilons=STATIC_LADDER),
    6: dict(epsilon=0.012, lambda_end=3.7),
    7: dict(epsilon=0.02, n_max=300),
    8: dict(epsilon=0.01, lambda_end=3.35),
    9: dict(),
}


def _nan_pair(lam):
    if lam < 3.0:
        return math.nan, math.nan
    return equilibrium_period2(lam)


def figure_data(which: int, **params) -> FigureTable:
    """Data behind figure ``which`` (1-9), with defaults matching the source."""
    try:
        which = int(which)
        p = dict(FIGURE_DEFAULTS[which])
    except (KeyError, ValueError, TypeError):
        raise UnknownFigure(f"no figure {which!r}; choose 1-9") from None
    unknown = set(params) - set(p) - ({"rules", "variant"} if which == 9 else set())
    if unknown:
        raise ValueError(f"unknown parameters for figure {which}: {sorted(unknown)}")
    p.update(params)

    if which == 1:
        scan = bifurcation_scan(**p)
        return FigureTable(("lambda", "x"), list(scan.rows()))

    if which == 2:
        eps, N = p["epsilon"], p["n_max"]
        x = exact_trajectory("static", eps, N)
        lam = 3.0 + eps
        xt = equilibrium_period1(lam)
        xp, xm = equilibrium_period2(lam)
        return FigureTable(
            ("n", "x_exact", "x_unstable", "x_plus", "x_minus"),
            [(n, x[n], xt, xp, xm) for n in range(N + 1)],
        )

    if which == 3:
        eps, N = p["epsilon"], p["n_max"]
        x = exact_trajectory("static", eps, N)
        n_star, _ = static.static_breakdown(eps)
        s1 = _series(1)
        rows = []
        for n in range(N + 1):
            try:
                one = static.eval_early_static(s1, n, eps, 0)
                two = static.eval_early_static(s1, n, eps, 1)
            except OverflowError:
                one = two = math.nan
            rows.append((n, x[n], one, two, n_star))
        return FigureTable(("n", "x_exact", "early_one_term", "early_two_term", "n_star"), rows)

    if which == 4:
        eps, N = p["epsilon"], p["n_max"]
        x = exact_trajectory("static", eps, N)
        n_star, _ = static.static_breakdown(eps)
        n = np.arange(N + 1)
        comp = static.composite_static(n, eps)
        return FigureTable(
            ("n", "x_exact", "composite", "n_star"),
            [(int(k), x[k], comp[k], n_star) for k in n],
        )

    if which == 5:
        rep = static_error_scan(p["epsilons"])
        return FigureTable(("epsilon", "n", "error", "fitted_slope", "fit_r2"), list(rep.rows()))

    if which == 6:
        eps = p["epsilon"]
        N = n_for_lambda(eps, p["lambda_end"])
        x = exact_trajectory("dynamic", eps, N)
        rows = []
        for n in range(N + 1):
            lam = 3.0 + eps * eps * n
            xp, xm = _nan_pair(lam)
            rows.append((n, lam, x[n], adiabatic_period1(lam, eps, 6), xp, xm))
        return FigureTable(("n", "lambda", "x_exact", "x_bar_period1", "x_plus_static", "x_minus_static"), rows)

    if which == 7:
        eps, N = p["epsilon"], p["n_max"]
        x = exact_trajectory("dynamic", eps, N)
        n_star, _ = dynamic.dynamic_breakdown(eps)
        rows = []
        for n in range(N + 1):
            try:
                e = dynamic.early_dynamic(n, eps, 1)
            except OverflowError:
                e = math.nan
            rows.append((n, x[n], e, n_star))
        return FigureTable(("n", "x_exact", "early_two_term", "n_star"), rows)

    if which == 8:
        eps = p["epsilon"]
        N = n_for_lambda(eps, p["lambda_end"])
        x = exact_trajectory("dynamic", eps, N)
        n = np.arange(N + 1)
        centre, amp = dynamic.composite_envelope(n, eps)
        comp = dynamic.composite_dynamic(n, eps)
        marks = [dynamic_point_error(eps, r)[0] for r in ("a", "b", "c")]
        return FigureTable(
            ("n", "x_exact", "composite", "branch_plus", "branch_minus", "n_a", "n_b", "n_c"),
            [(int(k), x[k], comp[k], centre[k] + amp[k], centre[k] - amp[k], *marks) for k in n],
        )

    # which == 9
    rules = p.get("rules", ("a", "b", "c"))
    variant = dynamic.Variant(p.get("variant", dynamic.Variant.EPS_CUBED))
    rows = []
    for rule in rules:
        rep = dynamic_error_scan(rule, variant=variant)
        for e, n, err, slope, r2 in rep.rows():
            rows.append((rule, e, n, err, slope, r2))
    return FigureTable(("panel", "epsilon", "n", "error", "fitted_slope", "fit_r2"), rows)

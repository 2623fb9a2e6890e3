"""Asymptotics of the logistic map with fixed lambda = 3 + eps, x(0) = 2/3.

Early times use a two-timing expansion x = 2/3 + eps X with
X ~ sum_r eps^r [f_r(t) + (-1)^n g_r(t)], t = eps n, generated to any order
in exact arithmetic.  Late times use the shifted frame t = K0 + s with
K0 = log(1/eps)/2, where the amplitude saturates on the 2-cycle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from .errors import MatchFailure, OrderTooHigh
from .maps import LateTimeFrame, ParityRule
from .polyexp import PolyExpSum, evaluate, solve_forced_linear

__all__ = [
    "EarlySeriesStatic",
    "build_early_static",
    "eval_early_static",
    "order_equation",
    "series_residual",
    "static_breakdown",
    "late_static_two_term",
    "composite_static",
    "matching_constant_static",
    "MAX_ORDER",
]

MAX_ORDER = 12
TWO_THIRDS = 2.0 / 3.0


@dataclass(frozen=True)
class EarlySeriesStatic:
    order: int
    f: tuple[PolyExpSum, ...]
    g: tuple[PolyExpSum, ...]

    def term(self, r: int, parity: int) -> PolyExpSum:
        """X_r for even (parity 0) or odd (parity 1) n, as one exact sum."""
        return self.f[r] - self.g[r] if parity % 2 else self.f[r] + self.g[r]

    def truncated(self, order: int) -> "EarlySeriesStatic":
        return EarlySeriesStatic(order, self.f[: order + 1], self.g[: order + 1])


def _conv(a, b, upto):
    """sum_{k=0}^{upto} a[k] * b[upto - k]; empty when upto < 0."""
    total = PolyExpSum()
    for k in range(upto + 1):
        total = total + a[k] * b[upto - k]
    return total


def build_early_static(order: int) -> EarlySeriesStatic:
    """f_r and g_r for r = 0..order.

    f_r is the non-oscillating half of the order-r balance; g_r solves the
    first-order ODE that removes secular (-1)^n forcing at order r + 1.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    if order > MAX_ORDER:
        raise OrderTooHigh(f"order {order} exceeds the guard {MAX_ORDER}")
    half = Fraction(1, 2)
    f = [PolyExpSum.constant(Fraction(1, 9))]
    g = [PolyExpSum.monomial(Fraction(-1, 9), 0, 1)]
    for r in range(1, order + 1):
        fr = -Fraction(1, 6) * f[r - 1]
        fr = fr - Fraction(3, 2) * (_conv(f, f, r - 1) + _conv(g, g, r - 1))
        fr = fr - half * (_conv(f, f, r - 2) + _conv(g, g, r - 2))
        for j in range(1, r + 1):
            fr = fr - half * Fraction(1, factorial(j)) * f[r - j].derivative(j)
        f.append(fr)

        rhs = PolyExpSum()
        for k in range(1, r + 1):
            rhs = rhs + 6 * f[k] * g[r - k]
        rhs = rhs + 2 * _conv(f, g, r - 1)
        for j in range(1, r + 1):
            rhs = rhs - Fraction(1, factorial(j + 1)) * g[r - j].derivative(j + 1)
        g.append(solve_forced_linear(rhs, -fr.value_at_zero()))
    return EarlySeriesStatic(order, tuple(f), tuple(g))


def order_equation(series: EarlySeriesStatic, p: int) -> tuple[PolyExpSum, PolyExpSum]:
    """Right side of the order-eps^p balance, split as (steady, oscillating).

    Assembled directly from the two-timed map, independently of the closed
    formulas in :func:`build_early_static`: terms of the series up to order
    p - 1 enter the right side, and the oscillating part must vanish for the
    expansion to stay free of secular terms.
    """
    f, g = series.f, series.g
    if p - 1 > series.order:
        raise ValueError("series too short for this order")
    steady = PolyExpSum()
    osc = PolyExpSum()
    if p == 0:
        return PolyExpSum.constant(Fraction(2, 9)), osc
    steady = steady - Fraction(1, 3) * f[p - 1]
    osc = osc - Fraction(1, 3) * g[p - 1]
    for shift, weight in ((1, 3), (2, 1)):
        for k in range(0, p - shift + 1):
            l = p - shift - k
            steady = steady - weight * (f[k] * f[l] + g[k] * g[l])
            osc = osc - weight * (f[k] * g[l] + g[k] * f[l])
    for j in range(1, p + 1):
        c = Fraction(1, factorial(j))
        # X(n+1) has oscillating part -g
        steady = steady - c * f[p - j].derivative(j)
        osc = osc + c * g[p - j].derivative(j)
    return steady, osc


def _parity(n) -> int:
    return int(n) % 2


def eval_early_static(series: EarlySeriesStatic, n: int, epsilon: float, order: int | None = None) -> float:
    """x(n) = 2/3 + eps * sum_{r<=order} eps^r X_r(n, eps n)."""
    order = series.order if order is None else order
    if order > series.order:
        raise ValueError("order exceeds the built series")
    t = epsilon * n
    par = _parity(n)
    X = 0.0
    for r in range(order, -1, -1):
        X = X * epsilon + evaluate(series.term(r, par), t)
    return TWO_THIRDS + epsilon * X


def series_residual(series: EarlySeriesStatic, epsilon: float, t: float, parity: int, order: int | None = None) -> float:
    """Defect of the truncated series in the rescaled map at (n, t).

    X(n+1, t+eps) + X(n, t) - 2/9 + eps (X/3 + 3 X^2) + eps^2 X^2
    """
    order = series.order if order is None else order

    def X(par, tt):
        acc = 0.0
        for r in range(order, -1, -1):
            acc = acc * epsilon + evaluate(series.term(r, par), tt)
        return acc

    x_now = X(parity, t)
    x_next = X(parity + 1, t + epsilon)
    return x_next + x_now - 2.0 / 9.0 + epsilon * (x_now / 3.0 + 3.0 * x_now**2) + epsilon**2 * x_now**2


def static_breakdown(epsilon: float) -> tuple[float, LateTimeFrame]:
    """Breakdown time n* = log(1/eps)/(2 eps) and the matching late frame."""
    if not (0.0 < epsilon <= 0.25):
        raise ValueError("epsilon must lie in (0, 0.25]")
    K0 = 0.5 * math.log(1.0 / epsilon)
    frame = LateTimeFrame(
        epsilon=epsilon,
        delta=epsilon**-0.5,
        K0=K0,
        K1=1.0,
        parity_rule=ParityRule.OPPOSITE,
    )
    return K0 / epsilon, frame


def _check_s(s):
    if np.any(np.asarray(s) > 350.0):
        raise OverflowError("late-time s beyond 350")


def late_static_two_term(m, s, epsilon: float):
    """xi(m, s) to two terms; x = 2/3 + sqrt(eps) xi."""
    _check_s(s)
    sign = np.where(np.asarray(m) % 2 == 0, 1.0, -1.0)
    e2s = np.exp(2.0 * np.asarray(s, dtype=float))
    first = sign * np.exp(s) / (3.0 * np.sqrt(9.0 + e2s))
    second = (18.0 - e2s) / (162.0 + 18.0 * e2s) * math.sqrt(epsilon)
    out = first + second
    return float(out) if np.ndim(out) == 0 else out


def composite_static(n, epsilon: float):
    """Uniformly valid two-term approximation to x(n), error O(eps^{3/2})."""
    n = np.asarray(n)
    t = epsilon * n
    if np.any(t > 350.0):
        raise OverflowError("eps n beyond 350")
    sign = np.where(n % 2 == 0, 1.0, -1.0)
    e = np.exp(t)
    e2 = e * e
    out = (
        TWO_THIRDS
        - sign * epsilon * e / (3.0 * np.sqrt(9.0 + epsilon * e2))
        + (18.0 * epsilon - epsilon**2 * e2) / (162.0 + 18.0 * epsilon * e2)
    )
    return float(out) if out.ndim == 0 else out


def matching_constant_static(
    epsilon: float = 0.01,
    s: float = -30.0,
    parity_rule: ParityRule = ParityRule.OPPOSITE,
    kappa: Fraction | None = None,
    series: EarlySeriesStatic | None = None,
    tol: float = 1e-6,
) -> Fraction:
    """Matching constant of the late-time amplitude, checked numerically.

    The late amplitude behaves like e^s / (3 sqrt(kappa)) as s -> -inf; the
    early solution's growing mode is the leading coefficient of g_0.  The
    ratio of the two, written in common variables, must tend to 1.
    """
    series = series or build_early_static(0)
    rate, _, c0 = series.g[0].leading()
    if kappa is None:
        kappa = (1 / (3 * abs(c0))) ** 2
    _, frame = static_breakdown(epsilon)
    # (-1)^n relative to (-1)^m under the chosen parity rule
    n_sign = -1.0 if parity_rule is ParityRule.OPPOSITE else 1.0
    t = frame.t_of_s(s)
    late = math.sqrt(epsilon) * math.exp(s) / (3.0 * math.sqrt(math.exp(2 * s) + float(kappa)))
    early = epsilon * float(c0) * n_sign * math.exp(rate * t)
    ratio = late / early
    if abs(ratio - 1.0) > tol:
        raise MatchFailure(f"matching ratio {ratio!r} at s={s} (kappa={kappa})")
    return Fraction(kappa)

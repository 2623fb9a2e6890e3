"""Asymptotics of the swept logistic map, lambda(n) = 3 + eps^2 n, x(0) = 2/3.

Early times sit on the 1-periodic adiabatic manifold plus an eps^2 mode
growing like exp(t^2/2); the transition happens around t = K where
eps^3 exp(K^2) / K = 1.  Late-time and composite amplitudes are evaluated
through Dawson's integral so nothing overflows.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import MatchFailure, NoConvergence, RangeError
from .manifolds import adiabatic_period1
from .maps import LAMBDA_CAP, LateTimeFrame, ParityRule
from .specfun import dawson, log_denominator

__all__ = [
    "Variant",
    "KSolution",
    "solve_K",
    "early_dynamic",
    "late_dynamic_leading",
    "late_amplitude_P",
    "composite_dynamic",
    "composite_envelope",
    "matching_constant_dynamic",
    "dynamic_breakdown",
    "KAPPA_DYNAMIC",
]

KAPPA_DYNAMIC = Fraction(324)
EARLY_AMPLITUDE = Fraction(1, 18)


class Variant(str, enum.Enum):
    """Power of eps multiplying erfi in the composite denominator."""

    EPS_CUBED = "eps3"
    EPS_THREE_HALVES = "eps3/2"

    @property
    def power(self) -> float:
        return 3.0 if self is Variant.EPS_CUBED else 1.5


@dataclass(frozen=True)
class KSolution:
    epsilon: float
    K: float
    residual: float
    iterations: int


def solve_K(epsilon: float, tol: float = 1e-14, max_iter: int = 200) -> KSolution:
    """Root of eps^3 exp(K^2) / K = 1 on the large-K branch.

    Fixed-point iteration K <- sqrt(3 log(1/eps) + log K), started from the
    leading-order value sqrt(3 log(1/eps)).
    """
    if not (0.0 < epsilon <= 0.2):
        raise ValueError("epsilon must lie in (0, 0.2]")
    if tol < 1e-14:
        raise ValueError("tol must be >= 1e-14")
    L = 3.0 * math.log(1.0 / epsilon)
    K = math.sqrt(L)
    for it in range(1, max_iter + 1):
        K_new = math.sqrt(L + math.log(K))
        done = abs(K_new - K) <= tol
        K = K_new
        if done:
            # relation in log form: 3 log eps - log K + K^2 = 0
            residual = math.expm1(K * K - L - math.log(K))
            return KSolution(epsilon, K, residual, it)
    raise NoConvergence(f"K iteration did not settle in {max_iter} steps")


def _sign(n):
    return np.where(np.asarray(n) % 2 == 0, 1.0, -1.0)


def early_dynamic(n, epsilon: float, order: int = 1):
    """Two-term early-time approximation on top of the adiabatic manifold."""
    if order not in (0, 1):
        raise ValueError("only orders 0 and 1 are available")
    n_arr = np.asarray(n)
    t = epsilon * n_arr.astype(float)
    if np.any(t * t / 2.0 > 700.0):
        raise OverflowError("exp(t^2/2) out of range")
    lam = 3.0 + epsilon * t
    xbar = adiabatic_period1(lam, epsilon, 4)
    growth = np.exp(t * t / 2.0)
    X = float(EARLY_AMPLITUDE) * growth
    if order == 1:
        X = X - epsilon / 108.0 * (t**3 + 5.0 * t) * growth
    out = xbar + epsilon**2 * _sign(n_arr) * X
    return float(out) if np.ndim(out) == 0 else out


def late_amplitude_P(s, K: float, kappa: float = 324.0):
    """Slowly varying late-time amplitude (positive branch)."""
    s = np.asarray(s, dtype=float)
    t = K + s / K
    F = np.vectorize(lambda v: dawson(v).value)(t)
    # e^{s + s^2/2K^2} / sqrt(kappa + 18 K e^{2s + s^2/K^2} F), divided through
    out = 1.0 / np.sqrt(kappa * np.exp(-2.0 * s - s * s / (K * K)) + 18.0 * K * F)
    return float(out) if out.ndim == 0 else out


def late_dynamic_leading(m, s, K: float, kappa: float = 324.0):
    """Leading late-time solution xi_0(m, s); x - xbar = sqrt(eps K) xi_0."""
    out = _sign(m) * late_amplitude_P(s, K, kappa)
    return float(out) if np.ndim(out) == 0 else out


def _check_lambda(n, epsilon):
    if np.any(3.0 + epsilon * epsilon * np.asarray(n, dtype=float) > LAMBDA_CAP):
        raise RangeError(f"lambda exceeds {LAMBDA_CAP}")


def composite_envelope(n, epsilon: float, variant: Variant = Variant.EPS_CUBED):
    """Non-oscillating part and oscillation amplitude of the composite.

    Returns (centre, amplitude) with x = centre + (-1)^n amplitude.
    """
    variant = Variant(variant)
    _check_lambda(n, epsilon)
    n_arr = np.asarray(n, dtype=float)
    lam = 3.0 + epsilon * epsilon * n_arr
    centre = (lam - 1.0) / lam - epsilon**2 / ((lam - 1.0) * lam**2)
    eps_power = epsilon**variant.power
    t = epsilon * n_arr

    def amp(tt):
        tt = float(tt)
        tail = math.exp(log_denominator(tt, eps_power) - tt * tt) if tt > 0 else 0.0
        # e^{t^2/2} / sqrt(324 + 9 sqrt(pi) eps^p erfi(t)), divided through by e^{t^2/2}
        return 1.0 / math.sqrt(324.0 * math.exp(-tt * tt) + tail)

    amplitude = epsilon**2 * np.vectorize(amp, otypes=[float])(t)
    if np.ndim(amplitude) == 0:
        return float(centre), float(amplitude)
    return centre, amplitude


def composite_dynamic(n, epsilon: float, variant: Variant = Variant.EPS_CUBED):
    """Uniform leading-order approximation to x(n) on the swept map."""
    centre, amplitude = composite_envelope(n, epsilon, variant)
    out = centre + _sign(n) * amplitude
    return float(out) if np.ndim(out) == 0 else out


def dynamic_breakdown(epsilon: float, ksol: KSolution | None = None) -> tuple[float, LateTimeFrame]:
    """Transition time n* = K/eps and the late frame t = K + s/K."""
    ksol = ksol or solve_K(epsilon)
    K = ksol.K
    frame = LateTimeFrame(
        epsilon=epsilon,
        delta=math.sqrt(K) * epsilon**-1.5,
        K0=K,
        K1=1.0 / K,
        parity_rule=ParityRule.SAME,
    )
    return K / epsilon, frame


def matching_ratio_dynamic(epsilon: float, s: float, kappa: float = 324.0, ksol: KSolution | None = None) -> float:
    """Late solution over early leading mode, both in early variables."""
    ksol = ksol or solve_K(epsilon)
    K = ksol.K
    t = K + s / K
    # log of K^{1/2} eps^{-3/2} |xi_0|
    log_late = 0.5 * math.log(K) - 1.5 * math.log(epsilon) - 0.5 * math.log(
        kappa * math.exp(-2.0 * s - s * s / (K * K)) + 18.0 * K * dawson(t).value
    )
    log_early = t * t / 2.0 + math.log(float(EARLY_AMPLITUDE))
    return math.exp(log_late - log_early)


def matching_constant_dynamic(
    epsilon: float = 0.01,
    kappa: float | None = None,
    s_values=(-10.0, -20.0),
    tol: float = 1e-6,
) -> Fraction:
    """Matching constant 324 = (1 / A(0))^2, confirmed by the limit ratio."""
    kappa_exact = 1 / EARLY_AMPLITUDE**2
    kappa = float(kappa_exact) if kappa is None else kappa
    ksol = solve_K(epsilon)
    for s in s_values:
        ratio = matching_ratio_dynamic(epsilon, s, kappa, ksol)
        if abs(ratio - 1.0) > tol:
            raise MatchFailure(f"matching ratio {ratio!r} at s={s} (kappa={kappa})")
    return Fraction(kappa)

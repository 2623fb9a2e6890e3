"""Dawson's integral and the imaginary error function for real arguments.

For |x| <= 6.5 both come from the positive Maclaurin series
S(x) = sum_k x^(2k+1) / (k! (2k+1)), with erfi = 2 S / sqrt(pi) and
F = exp(-x^2) S.  There is no cancellation in S, so the relative error stays
at a few ulp.  Beyond that F uses its asymptotic series, truncated at the
smallest term (which is below 1e-17 relative there).
"""

from __future__ import annotations

import math
from typing import NamedTuple

__all__ = ["SpecFunResult", "dawson", "erfi", "log_denominator"]

_EPS = 2.220446049250313e-16
_SQRT_PI = math.sqrt(math.pi)
SERIES_MAX = 6.5
DAWSON_MAX = 1e8
ERFI_MAX = 26.0


class SpecFunResult(NamedTuple):
    value: float
    est_abs_error: float


def _exp_square(x: float, sign: float) -> float:
    """exp(sign * x^2) without rounding x^2 first.

    x is split as hi + lo with hi carrying 26 bits, so hi^2 is exact and the
    small remainder 2 hi lo + lo^2 goes into a second exponential.
    """
    c = 134217729.0 * x  # 2^27 + 1
    hi = c - (c - x)
    lo = x - hi
    return math.exp(sign * hi * hi) * math.exp(sign * (2.0 * hi * lo + lo * lo))


def _erfi_series(x: float) -> tuple[float, int]:
    """S(x) = integral_0^x exp(y^2) dy and the number of terms used."""
    x2 = x * x
    term = x  # x^(2k+1) / k!
    total = x
    k = 0
    while True:
        k += 1
        term *= x2 / k
        contrib = term / (2 * k + 1)
        total += contrib
        if contrib <= _EPS * 0.25 * total:
            return total, k


def _dawson_asymptotic(x: float) -> float:
    # F(x) ~ 1/(2x) * sum_k (2k-1)!! / (2x^2)^k
    inv = 1.0 / (2.0 * x * x)
    term = 1.0
    total = 1.0
    k = 0
    while k < 200:
        k += 1
        nxt = term * (2 * k - 1) * inv
        if nxt >= term:
            break
        term = nxt
        total += term
        if term < _EPS * 0.25 * total:
            break
    return total / (2.0 * x)


def dawson(x: float) -> SpecFunResult:
    """F(x) = exp(-x^2) * integral_0^x exp(y^2) dy."""
    x = float(x)
    if abs(x) > DAWSON_MAX:
        raise ValueError(f"|x| must not exceed {DAWSON_MAX:g}")
    if x < 0:
        r = dawson(-x)
        return SpecFunResult(-r.value, r.est_abs_error)
    if x == 0.0:
        return SpecFunResult(0.0, 0.0)
    if x <= SERIES_MAX:
        s, k = _erfi_series(x)
        value = _exp_square(x, -1.0) * s
        err = value * _EPS * (k + 4.0)
        return SpecFunResult(value, err)
    value = _dawson_asymptotic(x)
    return SpecFunResult(value, 4.0 * _EPS * value)


def erfi(x: float) -> SpecFunResult:
    """erfi(x) = 2/sqrt(pi) * integral_0^x exp(y^2) dy."""
    x = float(x)
    if abs(x) > ERFI_MAX:
        raise OverflowError(f"erfi overflows for |x| > {ERFI_MAX}")
    if x < 0:
        r = erfi(-x)
        return SpecFunResult(-r.value, r.est_abs_error)
    if x == 0.0:
        return SpecFunResult(0.0, 0.0)
    if x <= SERIES_MAX:
        s, k = _erfi_series(x)
        value = 2.0 / _SQRT_PI * s
        return SpecFunResult(value, value * _EPS * (k + 2.0))
    f = dawson(x)
    value = 2.0 / _SQRT_PI * _exp_square(x, 1.0) * f.value
    return SpecFunResult(value, value * _EPS * 10.0)


def log_denominator(t: float, eps_power: float) -> float:
    """log(9 sqrt(pi) * eps_power * erfi(t)), finite for large t.

    Written through Dawson's integral as log(18 eps_power F(t)) + t^2; returns
    -inf at t = 0 where erfi vanishes.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    if t == 0:
        return -math.inf
    return math.log(18.0 * eps_power * dawson(t).value) + t * t

"""Periodic equilibria of the logistic map and the adiabatic manifolds of the
slowly swept map.

The series functions only use field operations (plus a square root for the
period-2 branch), so they accept floats, :class:`fractions.Fraction` or
``mpmath.mpf`` and return the same kind of number.  The residual checks rely
on that to stay clear of rounding.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath
import numpy as np

from .errors import DomainError, UnsupportedOrder

__all__ = [
    "equilibrium_period1",
    "equilibrium_period2",
    "adiabatic_period1",
    "adiabatic_period2",
    "manifold_residual",
]

P1_MAX_ORDER = 6
P2_MAX_ORDER = 2


def equilibrium_period1(lam):
    if lam <= 1:
        raise DomainError(f"no positive equilibrium for lambda={lam} <= 1")
    return (lam - 1) / lam


def equilibrium_period2(lam):
    """The (plus, minus) values visited by the 2-cycle."""
    if lam < 3:
        raise DomainError(f"2-cycle needs lambda >= 3, got {lam}")
    root = (lam * lam - 2 * lam - 3) ** 0.5
    return (lam + 1 + root) / (2 * lam), (lam + 1 - root) / (2 * lam)


def _below(value, bound) -> bool:
    return bool(np.any(np.asarray(value) < bound))


def _p1_terms(lam):
    lm1 = lam - 1
    yield 2, -1 / (lm1 * lam**2)
    yield 4, (lam**2 - 5 * lam + 2) / (lm1**3 * lam**3)
    yield 6, (-(lam**4) + 14 * lam**3 - 44 * lam**2 + 27 * lam - 6) / (lm1**5 * lam**4)


def adiabatic_period1(lam, epsilon, order: int = 6):
    """Partial sum through eps**order of the 1-periodic adiabatic manifold.

    Only even powers appear, so an odd ``order`` truncates at order - 1.
    """
    if order < 0 or order > P1_MAX_ORDER:
        raise UnsupportedOrder(f"period-1 manifold known through order {P1_MAX_ORDER}")
    if _below(lam - 1, 0.1):
        raise DomainError("series unusable for lambda - 1 < 0.1")
    value = (lam - 1) / lam
    eps2 = epsilon * epsilon
    for power, coeff in _p1_terms(lam):
        if power > order:
            break
        value = value + eps2 ** (power // 2) * coeff
    return value


def adiabatic_period2(lam, epsilon, order: int = 2):
    """(plus, minus) branches of the 2-periodic adiabatic manifold."""
    if order < 0 or order > P2_MAX_ORDER:
        raise UnsupportedOrder(f"period-2 manifold known through order {P2_MAX_ORDER}")
    if _below(lam - 3, 5 * epsilon):
        raise DomainError("expansion disordered for lambda - 3 < 5 eps")
    plus, minus = equilibrium_period2(lam)
    if order >= 2:
        lp1 = lam + 1
        even = (lam + 3) / (2 * (lam - 3) * lam**2 * lp1)
        odd = (lam**2 - 4 * lam - 9) / (2 * (lam - 3) ** 1.5 * lam**2 * lp1**1.5)
        eps2 = epsilon * epsilon
        plus = plus + eps2 * (even + odd)
        minus = minus + eps2 * (even - odd)
    return plus, minus


def _exact(v):
    if isinstance(v, Fraction):
        return v
    return Fraction(v)


def manifold_residual(epsilon, lam, order: int, which: str = "P1") -> float:
    """Invariance defect of a truncated adiabatic manifold under one step.

    P1: |xbar(lam + eps^2) - lam xbar(lam) (1 - xbar(lam))|, computed in
    exact rational arithmetic.  P2: the larger of the two branch-swap defects
    xbar^-(lam + eps^2) vs the image of xbar^+(lam) and vice versa, computed
    with 60-digit mpmath.
    """
    which = which.upper()
    if which == "P1":
        e, l = _exact(epsilon), _exact(lam)
        xb = adiabatic_period1(l, e, order)
        nxt = adiabatic_period1(l + e * e, e, order)
        return float(abs(nxt - l * xb * (1 - xb)))
    if which == "P2":
        with mpmath.workdps(60):
            e = mpmath.mpf(_exact(epsilon).numerator) / _exact(epsilon).denominator
            l = mpmath.mpf(_exact(lam).numerator) / _exact(lam).denominator
            plus, minus = adiabatic_period2(l, e, order)
            plus2, minus2 = adiabatic_period2(l + e * e, e, order)
            d1 = abs(minus2 - l * plus * (1 - plus))
            d2 = abs(plus2 - l * minus * (1 - minus))
            return float(max(d1, d2))
    raise ValueError(f"which must be 'P1' or 'P2', got {which!r}")

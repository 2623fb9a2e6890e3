"""Exact sums of polynomial-times-exponential terms in the slow time.

A :class:`PolyExpSum` represents

    sum_a p_a(t) * exp(a * t)

with non-negative integer rates ``a`` and polynomials ``p_a`` whose
coefficients are :class:`fractions.Fraction`.  This is the closed class in
which every term of the early-time static series lives, so all algebra on
it is exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping

__all__ = [
    "PolyExpSum",
    "add",
    "mul",
    "differentiate",
    "solve_forced_linear",
    "evaluate",
]

MAX_EXPONENT = 700.0


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    return Fraction(value)


def _trim(coeffs: Iterable[Fraction]) -> tuple[Fraction, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_add(p, q):
    n = max(len(p), len(q))
    return _trim(
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)
    )


def _poly_mul(p, q):
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _trim(out)


def _poly_deriv(p):
    return _trim(i * p[i] for i in range(1, len(p)))


class PolyExpSum:
    """Immutable canonical sum of ``p_a(t) * exp(a t)`` terms.

    ``terms`` maps an integer rate to polynomial coefficients in ascending
    powers of ``t``.  Zero polynomials are dropped, so structural equality is
    mathematical equality.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Iterable] | None = None):
        clean = {}
        for rate, coeffs in (terms or {}).items():
            if int(rate) != rate or rate < 0:
                raise ValueError(f"rates must be non-negative integers, got {rate!r}")
            poly = _trim(_as_fraction(c) for c in coeffs)
            if poly:
                clean[int(rate)] = poly
        self._terms = tuple(sorted(clean.items()))
        self._hash = None

    # construction helpers

    @classmethod
    def zero(cls) -> "PolyExpSum":
        return cls()

    @classmethod
    def constant(cls, c) -> "PolyExpSum":
        return cls({0: [c]})

    @classmethod
    def monomial(cls, coeff=1, degree: int = 0, rate: int = 0) -> "PolyExpSum":
        """``coeff * t**degree * exp(rate t)``."""
        return cls({rate: [0] * degree + [coeff]})

    # structure

    @property
    def terms(self) -> dict[int, tuple[Fraction, ...]]:
        return dict(self._terms)

    @property
    def rates(self) -> list[int]:
        return [r for r, _ in self._terms]

    def poly(self, rate: int) -> tuple[Fraction, ...]:
        return self.terms.get(rate, ())

    def is_zero(self) -> bool:
        return not self._terms

    def leading(self) -> tuple[int, int, Fraction]:
        """(rate, degree, coefficient) of the dominant term as t -> +inf."""
        if not self._terms:
            raise ValueError("zero sum has no leading term")
        rate, poly = self._terms[-1]
        return rate, len(poly) - 1, poly[-1]

    def value_at_zero(self) -> Fraction:
        return sum((poly[0] for _, poly in self._terms), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, PolyExpSum):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == PolyExpSum.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    # arithmetic

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        merged = dict(self._terms)
        for rate, poly in other._terms:
            merged[rate] = _poly_add(merged.get(rate, ()), poly)
        return PolyExpSum(merged)

    __radd__ = __add__

    def __neg__(self):
        return PolyExpSum({r: [-c for c in p] for r, p in self._terms})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PolyExpSum({r: [other * c for c in p] for r, p in self._terms})
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, tuple] = {}
        for ra, pa in self._terms:
            for rb, pb in other._terms:
                out[ra + rb] = _poly_add(out.get(ra + rb, ()), _poly_mul(pa, pb))
        return PolyExpSum(out)

    __rmul__ = __mul__

    def derivative(self, k: int = 1) -> "PolyExpSum":
        if k < 0:
            raise ValueError("derivative order must be non-negative")
        cur = self
        for _ in range(k):
            out = {}
            for rate, poly in cur._terms:
                # (p e^{at})' = (p' + a p) e^{at}
                out[rate] = _poly_add(_poly_deriv(poly), tuple(rate * c for c in poly))
            cur = PolyExpSum(out)
        return cur

    # numerics

    def __call__(self, t):
        return evaluate(self, t)

    def __repr__(self):
        return f"PolyExpSum({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for rate, poly in self._terms:
            mono = []
            for deg, c in enumerate(poly):
                if c == 0:
                    continue
                if deg == 0:
                    mono.append(f"{c}")
                elif deg == 1:
                    mono.append(f"{c}*t")
                else:
                    mono.append(f"{c}*t^{deg}")
            parts.append(f"({' + '.join(mono)})·exp({rate}·t)")
        return " + ".join(parts)


def _coerce(value):
    if isinstance(value, PolyExpSum):
        return value
    if isinstance(value, (int, Fraction)):
        return PolyExpSum.constant(value)
    return NotImplemented


def add(a: PolyExpSum, b: PolyExpSum) -> PolyExpSum:
    return a + b


def mul(a: PolyExpSum, b: PolyExpSum) -> PolyExpSum:
    return a * b


def differentiate(a: PolyExpSum, k: int = 1) -> PolyExpSum:
    if k < 1:
        raise ValueError("k must be >= 1")
    return a.derivative(k)


def solve_forced_linear(rhs: PolyExpSum, initial_value) -> PolyExpSum:
    """Solve ``g' - g = rhs`` with ``g(0) = initial_value`` exactly.

    Non-resonant rates get a particular solution of the same rate by
    back-substitution from the top degree down; the resonant rate 1 is
    integrated term by term (raising the degree), and the leftover constant
    multiplies the homogeneous solution ``exp(t)``.
    """
    particular: dict[int, tuple] = {}
    for rate, p in rhs.terms.items():
        if rate == 1:
            q = (Fraction(0),) + tuple(c / (j + 1) for j, c in enumerate(p))
        else:
            # q' + (a - 1) q = p
            shift = Fraction(rate - 1)
            q = [Fraction(0)] * len(p)
            for k in range(len(p) - 1, -1, -1):
                above = (k + 1) * q[k + 1] if k + 1 < len(p) else 0
                q[k] = (p[k] - above) / shift
            q = tuple(q)
        particular[rate] = q
    g = PolyExpSum(particular)
    c = _as_fraction(initial_value) - g.value_at_zero()
    return g + PolyExpSum.monomial(c, 0, 1)


def evaluate(a: PolyExpSum, t) -> float:
    """Float value at ``t``, summing rates in ascending order.

    At ``t == 0`` the constant coefficients are summed exactly first, so
    sums that vanish exactly at the origin evaluate to exactly 0.0.
    """
    if t == 0:
        return float(a.value_at_zero())
    t = float(t)
    total = 0.0
    for rate, poly in a._terms:
        if rate * t > MAX_EXPONENT:
            raise OverflowError(f"exp({rate}*{t}) exceeds the representable range")
        acc = 0.0
        for c in reversed(poly):
            acc = acc * t + float(c)
        total += acc * math.exp(rate * t)
    return total

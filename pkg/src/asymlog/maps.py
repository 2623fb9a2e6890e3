"""Difference equations under study and their exact floating-point iteration."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError, RangeError

__all__ = [
    "MapKind",
    "MapSpec",
    "Trajectory",
    "ParityRule",
    "LateTimeFrame",
    "step",
    "iterate",
    "rescaled_step_static",
    "doubled_step_static",
    "bifurcation_scan",
    "BifurcationScan",
    "count_distinct",
]

LAMBDA_CAP = 4.0


class MapKind(str, enum.Enum):
    STATIC_LOGISTIC = "static"
    DYNAMIC_LOGISTIC = "dynamic"
    GALLERY_REGULAR = "regular"
    GALLERY_BOUNDARY_LAYER = "bl"
    GALLERY_DECAY = "decay"
    GALLERY_BLOWUP = "blowup"

    @property
    def is_logistic(self) -> bool:
        return self in (MapKind.STATIC_LOGISTIC, MapKind.DYNAMIC_LOGISTIC)


@dataclass(frozen=True)
class MapSpec:
    """Which map to iterate, with its small parameter and initial value.

    ``x0`` defaults to 2/3 for the logistic maps, 1 for the gallery maps and
    ``theta`` for the blow-up map.
    """

    kind: MapKind
    epsilon: float
    x0: float | None = None
    theta: float = 1.0

    def __post_init__(self):
        kind = MapKind(self.kind)
        object.__setattr__(self, "kind", kind)
        # the gallery maps also admit their eps = 0 limit
        low_ok = self.epsilon > 0.0 if kind.is_logistic else self.epsilon >= 0.0
        if not (low_ok and self.epsilon <= 0.25):
            raise DomainError(f"epsilon out of range: {self.epsilon}")
        if kind is MapKind.GALLERY_BLOWUP and not self.theta > 0:
            raise DomainError("theta must be positive")
        if self.x0 is None:
            if kind.is_logistic:
                x0 = 2.0 / 3.0
            elif kind is MapKind.GALLERY_BLOWUP:
                x0 = float(self.theta)
            else:
                x0 = 1.0
            object.__setattr__(self, "x0", x0)
        if kind.is_logistic and not (0.0 < self.x0 < 1.0):
            raise DomainError(f"logistic x0 must lie in (0, 1), got {self.x0}")

    def lam(self, n: int) -> float:
        """Bifurcation parameter in force at step n (logistic kinds only)."""
        if self.kind is MapKind.STATIC_LOGISTIC:
            return 3.0 + self.epsilon
        if self.kind is MapKind.DYNAMIC_LOGISTIC:
            return 3.0 + self.epsilon * self.epsilon * n
        raise TypeError(f"{self.kind.value} map has no bifurcation parameter")


def step(map: MapSpec, n: int, x: float) -> float:
    """One application of the map at discrete time ``n``."""
    kind, eps = map.kind, map.epsilon
    if kind is MapKind.STATIC_LOGISTIC:
        if not (0.0 < x < 1.0):
            raise DomainError(f"x={x} left (0, 1) at n={n}")
        return (3.0 + eps) * x * (1.0 - x)
    if kind is MapKind.DYNAMIC_LOGISTIC:
        if 3.0 + eps * eps * (n + 1) > LAMBDA_CAP:
            raise RangeError(f"lambda exceeds {LAMBDA_CAP} at n={n}")
        if not (0.0 < x < 1.0):
            raise DomainError(f"x={x} left (0, 1) at n={n}")
        return (3.0 + eps * eps * n) * x * (1.0 - x)
    if kind is MapKind.GALLERY_REGULAR:
        return x / 2.0 + eps * x * x
    if kind is MapKind.GALLERY_BOUNDARY_LAYER:
        return x / 2.0 + eps / x
    if kind is MapKind.GALLERY_DECAY:
        return x - eps * x + eps * eps / x
    if kind is MapKind.GALLERY_BLOWUP:
        return x + eps * x * x
    raise DomainError(f"unknown map kind {kind!r}")


@dataclass(frozen=True)
class Trajectory:
    map: MapSpec
    x: np.ndarray
    n: np.ndarray = field(repr=False)

    @property
    def t(self) -> np.ndarray:
        return self.map.epsilon * self.n

    @property
    def tau(self) -> np.ndarray:
        return self.map.epsilon**2 * self.n

    def __len__(self):
        return len(self.x)

    def __getitem__(self, k):
        return self.x[k]


def iterate(map: MapSpec, N: int) -> Trajectory:
    """Iterate ``N`` steps from ``map.x0``; returns N+1 values."""
    if N < 1:
        raise ValueError("N must be >= 1")
    xs = [float(map.x0)]
    x = xs[0]
    for n in range(N):
        x = step(map, n, x)
        xs.append(x)
    x_arr = np.array(xs)
    n_arr = np.arange(N + 1)
    x_arr.setflags(write=False)
    n_arr.setflags(write=False)
    return Trajectory(map=map, x=x_arr, n=n_arr)


# -- rescaled static map, x = 2/3 + eps X --------------------------------------

_2_9 = Fraction(2, 9)
_1_3 = Fraction(1, 3)


def rescaled_step_static(epsilon, X):
    """X(n+1) for the static map written about x = 2/3.

    Works for floats and, with Fraction arguments, exactly.
    """
    return _2_9 - X - epsilon * (_1_3 * X + 3 * X * X) - epsilon * epsilon * X * X


_DOUBLED = (
    # (power of eps, [coefficients of X^0 .. X^4])
    (1, [Fraction(-2, 9), Fraction(2), 0, 0, 0]),
    (2, [Fraction(-4, 81), Fraction(1), Fraction(3), Fraction(-18), 0]),
    (3, [0, Fraction(4, 27), Fraction(2), Fraction(-18), Fraction(-27)]),
    (4, [0, 0, Fraction(1, 3), Fraction(-6), Fraction(-27)]),
    (5, [0, 0, 0, Fraction(-2, 3), Fraction(-9)]),
    (6, [0, 0, 0, 0, Fraction(-1)]),
)


def doubled_step_static(epsilon, X):
    """X(n+2) from the explicit quartic form of the doubled rescaled map."""
    total = X
    eps_pow = 1
    for _, coeffs in _DOUBLED:
        eps_pow = eps_pow * epsilon
        poly = 0
        for c in reversed(coeffs):
            poly = poly * X + c
        total = total + eps_pow * poly
    return total


# -- late-time frame -----------------------------------------------------------


class ParityRule(str, enum.Enum):
    OPPOSITE = "opposite"  # m - n odd
    SAME = "same"  # m - n even


@dataclass(frozen=True)
class LateTimeFrame:
    """Shift-and-stretch map between early (n, t) and late (m, s) variables.

    t = K0 + K1 s and n = K0/eps - gamma + m, with gamma in [0, 2) fixed by
    the parity rule.  ``shift`` is the exact integer m - n.
    """

    epsilon: float
    delta: float
    K0: float
    K1: float
    parity_rule: ParityRule
    gamma: float = field(init=False)
    shift: int = field(init=False)

    def __post_init__(self):
        centre = self.K0 / self.epsilon
        want = 1 if self.parity_rule is ParityRule.OPPOSITE else 0
        gamma = (centre + want) % 2.0
        shift = round(gamma - centre)
        if shift % 2 != want:  # rounding landed on the wrong side of an integer
            gamma = (gamma + 1.0) % 2.0
            shift = round(gamma - centre)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "shift", int(shift))

    def m_of_n(self, n):
        return n + self.shift

    def n_of_m(self, m):
        return m - self.shift

    def s_of_t(self, t):
        return (t - self.K0) / self.K1

    def t_of_s(self, s):
        return self.K0 + self.K1 * s


# -- bifurcation diagram ---------------------------------------------------------


@dataclass(frozen=True)
class BifurcationScan:
    lambdas: np.ndarray
    values: np.ndarray  # shape (n_lambda, record)

    def distinct(self, i: int, tol: float = 1e-6) -> np.ndarray:
        return _cluster(self.values[i], tol)

    def rows(self):
        for lam, vals in zip(self.lambdas, self.values):
            for v in vals:
                yield float(lam), float(v)


def _cluster(values, tol):
    v = np.sort(np.asarray(values, dtype=float))
    if v.size == 0:
        return v
    keep = np.concatenate(([True], np.diff(v) > tol))
    return v[keep]


def count_distinct(values, tol: float = 1e-6) -> int:
    return int(_cluster(values, tol).size)


def bifurcation_scan(
    lambda_min: float = 2.45,
    lambda_max: float = 3.8,
    n_lambda: int = 136,
    transient: int = 2000,
    record: int = 64,
    x0: float = 0.5,
) -> BifurcationScan:
    """Long-run values of the fixed-lambda logistic map on a lambda grid."""
    if not (0.0 < lambda_min <= LAMBDA_CAP and 0.0 < lambda_max <= LAMBDA_CAP):
        raise RangeError("lambda must lie in (0, 4]")
    if not (2.0 < lambda_min <= lambda_max):
        raise RangeError("need 2 < lambda_min <= lambda_max <= 4")
    if n_lambda < 1 or record < 1 or transient < 0:
        raise ValueError("n_lambda and record must be positive")
    lambdas = np.linspace(lambda_min, lambda_max, n_lambda) if n_lambda > 1 else np.array([lambda_min])
    out = np.empty((len(lambdas), record))
    for i, lam in enumerate(lambdas):
        lam = float(lam)
        x = x0
        for _ in range(transient):
            x = lam * x * (1.0 - x)
        for k in range(record):
            x = lam * x * (1.0 - x)
            out[i, k] = x
    return BifurcationScan(lambdas=lambdas, values=out)


def n_for_lambda(epsilon: float, lam: float) -> int:
    """Largest n with 3 + eps^2 n <= lam on the swept map."""
    return int(math.floor((lam - 3.0) / (epsilon * epsilon) + 1e-9))

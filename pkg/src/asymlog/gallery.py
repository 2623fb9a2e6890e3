"""Four small maps showing which asymptotic approach each one calls for.

Each check iterates the map and measures the phenomenon the map is meant to
illustrate: a regular expansion that stays uniform, a change of dominant
balance, multiple scales followed by a balance change, and a continuous
approximation that blows up while the discrete solution does not.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .maps import MapKind, MapSpec

__all__ = [
    "Phenomenon",
    "GalleryDiagnostic",
    "gallery_regular_check",
    "gallery_boundary_layer_check",
    "gallery_decay_check",
    "gallery_blowup_check",
    "regular_two_term",
    "blowup_leading",
    "blowup_two_term",
    "crossing_offsets",
    "GALLERY_LADDER",
]

GALLERY_LADDER = (1e-3, 1e-4, 1e-5, 1e-6)


class Phenomenon(str, enum.Enum):
    REGULAR_OK = "RegularOK"
    BALANCE_CHANGE_ONLY = "BalanceChangeOnly"
    MULTIPLE_SCALES_THEN_BALANCE = "MultipleScalesThenBalance"
    BLOWUP_PROXY = "BlowupProxy"


_PHENOMENON = {
    MapKind.GALLERY_REGULAR: Phenomenon.REGULAR_OK,
    MapKind.GALLERY_BOUNDARY_LAYER: Phenomenon.BALANCE_CHANGE_ONLY,
    MapKind.GALLERY_DECAY: Phenomenon.MULTIPLE_SCALES_THEN_BALANCE,
    MapKind.GALLERY_BLOWUP: Phenomenon.BLOWUP_PROXY,
}


@dataclass(frozen=True)
class GalleryDiagnostic:
    map: MapSpec
    phenomenon: Phenomenon
    measured: dict = field(default_factory=dict)

    def __post_init__(self):
        if _PHENOMENON[self.map.kind] is not self.phenomenon:
            raise ValueError("phenomenon does not match the map kind")

    @property
    def passed(self) -> bool:
        return all(v for k, v in self.measured.items() if k.endswith("_ok"))

    def as_dict(self) -> dict:
        out = {"map": self.map.kind.value, "epsilon": self.map.epsilon, "phenomenon": self.phenomenon.value}
        out.update(self.measured)
        return out


def _diag(kind, epsilon, measured, **kw):
    spec = MapSpec(kind, epsilon, **kw)
    return GalleryDiagnostic(spec, _PHENOMENON[spec.kind], measured)


# -- regular map: x(n+1) = x/2 + eps x^2 ------------------------------------------


def regular_two_term(n, epsilon: float):
    """2^-n + eps a(n) with a(n) = 4 (2^-n - 4^-n)."""
    n = np.asarray(n, dtype=float)
    h = 0.5**n
    return h + epsilon * 4.0 * (h - h * h)


def gallery_regular_check(epsilon: float, N: int = 60) -> GalleryDiagnostic:
    if not (0.0 <= epsilon <= 0.1):
        raise ValueError("epsilon must lie in [0, 0.1]")
    xs = [1.0]
    for _ in range(N):
        x = xs[-1]
        xs.append(x / 2.0 + epsilon * x * x)
    err = np.abs(np.array(xs) - regular_two_term(np.arange(N + 1), epsilon))
    half = (N + 1) // 2
    measured = {
        "max_error": float(err.max()),
        "error_over_eps2": float(err.max() / epsilon**2) if epsilon > 0 else 0.0,
        "argmax_n": int(err.argmax()),
        # no secular growth: the tail carries no more error than the start
        "tail_max_error": float(err[half:].max()),
        "no_secular_growth_ok": bool(err[half:].max() <= err[: half + 1].max()),
    }
    return _diag(MapKind.GALLERY_REGULAR, epsilon, measured)


# -- boundary-layer map: x(n+1) = x/2 + eps/x -------------------------------------


def _first_crossing(update, x0: float, threshold: float, max_steps: int):
    x = x0
    for n in range(max_steps + 1):
        if x <= threshold:
            return n, x
        x = update(x)
    return None, x


def gallery_boundary_layer_check(epsilon: float) -> GalleryDiagnostic:
    """First n with x(n) <= 2 sqrt(eps) against log2(1/eps)/2."""
    if not (0.0 <= epsilon <= 0.01):
        raise ValueError("epsilon must lie in [0, 0.01]")
    threshold = 2.0 * math.sqrt(epsilon)
    predicted = 0.5 * math.log2(1.0 / epsilon) if epsilon > 0 else math.inf
    n_cross = None
    if epsilon > 0:
        # without eps the map is pure halving and no balance change happens
        n_cross, _ = _first_crossing(lambda x: x / 2.0 + epsilon / x, 1.0, threshold, 10_000)
    # balance x/2 = eps/x sets the late level sqrt(2 eps)
    x = 1.0
    for _ in range(200):
        x = x / 2.0 + epsilon / x
    measured = {
        "threshold": threshold,
        "crossing_n": n_cross,
        "predicted_n": predicted,
        "offset": (n_cross - predicted) if n_cross is not None else None,
        "late_level": x,
        "late_level_over_sqrt_eps": x / math.sqrt(epsilon) if epsilon > 0 else None,
    }
    return _diag(MapKind.GALLERY_BOUNDARY_LAYER, epsilon, measured)


# -- slow decay map: x(n+1) = x - eps x + eps^2/x --------------------------------


def _decay_crossing(epsilon: float, threshold: float):
    e2 = epsilon * epsilon
    x = 1.0
    n = 0
    while x > threshold:
        x = x - epsilon * x + e2 / x
        n += 1
    return n


def gallery_decay_check(epsilon: float, t_long: float | None = None) -> GalleryDiagnostic:
    """(i) early e^-t decay, (ii) long-run level sqrt(eps), (iii) transition time."""
    if not (0.0 <= epsilon <= 0.01):
        raise ValueError("epsilon must lie in [0, 0.01]")
    if epsilon == 0.0:
        return _diag(MapKind.GALLERY_DECAY, 0.0, {"constant_ok": True, "final_x": 1.0})
    e2 = epsilon * epsilon
    if t_long is None:
        t_long = math.log(1.0 / epsilon) + 8.0
    N = int(math.ceil(t_long / epsilon))
    n_early = int(1.0 / epsilon)
    threshold = 2.0 * math.sqrt(epsilon)
    x = 1.0
    early_err = 0.0
    n_cross = None
    for n in range(N + 1):
        if n <= n_early:
            early_err = max(early_err, abs(x - math.exp(-epsilon * n)))
        if n_cross is None and x <= threshold:
            n_cross = n
        x = x - epsilon * x + e2 / x
    level = math.sqrt(epsilon)
    predicted_t = 0.5 * math.log(1.0 / epsilon)
    t_cross = epsilon * n_cross
    measured = {
        "early_max_error": early_err,
        "early_ok": early_err <= 5.0 * epsilon,
        "final_x": x,
        "final_over_sqrt_eps": x / level,
        "level_ok": abs(x / level - 1.0) <= 0.1,
        "crossing_t": t_cross,
        "predicted_t": predicted_t,
        "offset": t_cross - predicted_t,
        "transition_ok": abs(t_cross - predicted_t) <= 1.0,
    }
    return _diag(MapKind.GALLERY_DECAY, epsilon, measured)


# -- blow-up map: x(n+1) = x + eps x^2 -------------------------------------------


def blowup_leading(t, theta: float = 1.0):
    return theta / (1.0 - theta * t)


def blowup_two_term(t, epsilon: float, theta: float = 1.0):
    """theta/u + eps theta^2 log(u)/u^2 with u = 1 - theta t."""
    u = 1.0 - theta * np.asarray(t, dtype=float)
    return theta / u + epsilon * theta**2 * np.log(u) / u**2


_LOG_SWITCH = math.log(1e150)


def _blowup_log_path(epsilon: float, theta: float, N: int) -> np.ndarray:
    """log x(n) for n = 0..N, stepping in log space once x is huge."""
    out = np.empty(N + 1)
    x = theta
    y = math.log(theta)
    log_eps = math.log(epsilon)
    in_log = False
    out[0] = y
    for n in range(1, N + 1):
        if not in_log:
            x = x + epsilon * x * x
            y = math.log(x)
            in_log = y > _LOG_SWITCH
        else:
            # log(x + eps x^2) = y + log(1 + eps e^y)
            y = y + np.logaddexp(0.0, log_eps + y)
        out[n] = y
    return out


def gallery_blowup_check(epsilon: float, theta: float = 1.0, margin: float = 10.0) -> GalleryDiagnostic:
    """Leading approximant theta/(1 - theta t) against the discrete solution.

    (i) worst relative deviation for t <= 1/theta - margin eps (10% target);
    (ii) the discrete solution is still finite at t = 1.05/theta;
    (iii) first time x >= 1/eps lies within 20 eps of 1/theta.
    """
    if not (0.0 < epsilon <= 0.01):
        raise ValueError("epsilon must lie in (0, 0.01]")
    if not (0.5 <= theta <= 2.0):
        raise ValueError("theta must lie in [0.5, 2]")
    t_blow = 1.0 / theta
    N = int(math.ceil(1.05 * t_blow / epsilon)) + 1
    logx = _blowup_log_path(epsilon, theta, N)
    n = np.arange(N + 1)
    t = epsilon * n

    def worst_dev(m, approx):
        sel = t <= t_blow - m * epsilon
        x = np.exp(logx[sel])
        return float(np.max(np.abs(x / approx(t[sel]) - 1.0)))

    dev = worst_dev(margin, lambda tt: blowup_leading(tt, theta))
    dev2 = worst_dev(margin, lambda tt: blowup_two_term(tt, epsilon, theta))
    # halfway to the blow-up time, where the leading approximant equals 2 theta
    n_half = int(round(0.5 * t_blow / epsilon))
    x_half = math.exp(logx[n_half])
    n_big = int(np.argmax(logx >= math.log(1.0 / epsilon)))
    t_big = epsilon * n_big
    n_after = int(math.ceil(1.05 * t_blow / epsilon))
    measured = {
        "theta": theta,
        "margin_eps": margin,
        "leading_max_rel_dev": dev,
        "leading_ok": dev <= 0.1,
        "two_term_max_rel_dev": dev2,
        "x_at_half_time": x_half,
        "leading_at_half_time": float(blowup_leading(epsilon * n_half, theta)),
        "log_x_after_blowup": float(logx[n_after]),
        "finite_after_ok": bool(np.isfinite(logx[n_after])),
        "t_reach_inv_eps": t_big,
        "reach_ok": abs(t_big - t_blow) < 20.0 * epsilon,
    }
    return _diag(MapKind.GALLERY_BLOWUP, epsilon, measured, theta=theta)


def crossing_offsets(kind: str, epsilons=GALLERY_LADDER) -> list[float]:
    """Crossing-time offsets from the predicted value across an eps ladder.

    bl: n - log2(1/eps)/2 at x <= 2 sqrt(eps); decay: t - log(1/eps)/2 at the
    same threshold.  Only the crossing is iterated, so small eps stay cheap.
    """
    kind = MapKind(kind)
    out = []
    for eps in epsilons:
        if kind is MapKind.GALLERY_BOUNDARY_LAYER:
            d = gallery_boundary_layer_check(eps).measured["offset"]
        elif kind is MapKind.GALLERY_DECAY:
            n = _decay_crossing(eps, 2.0 * math.sqrt(eps))
            d = eps * n - 0.5 * math.log(1.0 / eps)
        else:
            raise ValueError("crossing offsets are defined for bl and decay")
        out.append(float(d))
    return out

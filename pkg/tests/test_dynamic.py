import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from asymlog.analysis import exact_trajectory, plateau_deviation
from asymlog.dynamic import (
    KAPPA_DYNAMIC,
    Variant,
    composite_dynamic,
    composite_envelope,
    dynamic_breakdown,
    early_dynamic,
    late_amplitude_P,
    late_dynamic_leading,
    matching_constant_dynamic,
    matching_ratio_dynamic,
    solve_K,
)
from asymlog.errors import MatchFailure, RangeError
from asymlog.manifolds import adiabatic_period1
from asymlog.specfun import dawson


def _bisect_K(eps):
    g = lambda K: 3 * math.log(eps) - math.log(K) + K * K  # noqa: E731
    lo, hi = 1.0, 10.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if g(mid) > 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


@pytest.mark.parametrize("eps", [0.05, 0.02, 0.01, 0.005])
def test_solve_K_contract(eps):
    k = solve_K(eps)
    assert abs(eps**3 / k.K * math.exp(k.K**2) - 1) <= 1e-12
    assert abs(k.residual) <= 1e-12
    assert k.K >= math.sqrt(3 * math.log(1 / eps))
    assert k.K == pytest.approx(_bisect_K(eps), abs=1e-12)
    assert k.iterations <= 50


def test_solve_K_examples():
    assert solve_K(0.01).K == pytest.approx(3.896, abs=1e-3)
    gaps = [solve_K(e).K - math.sqrt(3 * math.log(1 / e)) for e in (0.1, 0.01, 0.001, 1e-4)]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
    assert solve_K(0.001).K > solve_K(0.01).K
    with pytest.raises(ValueError):
        solve_K(0.3)
    with pytest.raises(ValueError):
        solve_K(0.01, tol=1e-16)


@given(st.floats(1e-6, 0.2))
def test_K_monotone(eps):
    assert solve_K(eps / 10).K > solve_K(eps).K


def test_early_dynamic_initial_value():
    for eps in (0.02, 0.01):
        assert abs(early_dynamic(0, eps, 1) - 2 / 3) <= 2 * eps**4


def test_early_dynamic_leading_envelope():
    eps = 0.02
    n = 50  # t = 1
    xbar = adiabatic_period1(3 + eps * 1.0, eps, 4)
    assert early_dynamic(n, eps, 0) - xbar == pytest.approx(eps**2 / 18 * math.exp(0.5), rel=1e-10)


def test_early_dynamic_matches_iteration():
    eps = 0.02
    N = int(1.5 / eps)
    x = exact_trajectory("dynamic", eps, N)
    n = np.arange(N + 1)
    assert np.max(np.abs(x - early_dynamic(n, eps, 1))) <= 5 * eps**3
    n_star, _ = dynamic_breakdown(eps)
    late = np.arange(int(n_star) + 20, int(n_star) + 60)
    x_late = exact_trajectory("dynamic", eps, int(late[-1]))[late]
    assert np.max(np.abs(x_late - early_dynamic(late, eps, 1))) > 100 * eps**3


def test_early_dynamic_guards():
    with pytest.raises(ValueError):
        early_dynamic(3, 0.01, 2)
    with pytest.raises(OverflowError):
        early_dynamic(10**6, 0.01, 1)


def test_growth_mode_secularity():
    # A(t) = e^{t^2/2}/18 satisfies A' = t A
    A = lambda t: math.exp(t * t / 2) / 18  # noqa: E731
    h = 1e-5
    for t in np.linspace(0, 3, 31):
        d = (A(t + h) - A(t - h)) / (2 * h)
        assert abs(d - t * A(t)) <= 1e-8 * max(1, A(t))


@pytest.mark.parametrize("K", [3.5, 3.9, 4.2])
def test_late_amplitude_solves_secularity_ode(K):
    h = 1e-4
    for s in np.linspace(-10, 15, 101):
        P = late_amplitude_P(s, K)
        dP = (late_amplitude_P(s + h, K) - late_amplitude_P(s - h, K)) / (2 * h)
        assert abs(dP - P - s * P / K**2 + 9 * P**3) <= 1e-8


def test_late_leading_limits():
    K = solve_K(0.01).K
    # the exponent s + s^2/2K^2 is smallest near s = -K^2, where the limit form is sharpest
    s = -15.0
    assert late_dynamic_leading(0, s, K) == pytest.approx(math.exp(s + s * s / (2 * K * K)) / 18, rel=1e-6)
    assert late_dynamic_leading(1, s, K) == -late_dynamic_leading(0, s, K)
    K = 3.896
    direct = 1 / math.sqrt(324 + 18 * K * dawson(K).value)
    assert late_dynamic_leading(0, 0.0, K) == pytest.approx(direct, rel=1e-14)


def test_late_amplitude_large_s_plateau():
    K = 3.9
    s = 30.0
    # 18 K F(t) -> 9 K / t, so P -> sqrt(t / (9 K))
    t = K + s / K
    assert late_amplitude_P(s, K) == pytest.approx(math.sqrt(t / (9 * K)), rel=1e-2)


def test_composite_at_zero():
    for v in Variant:
        assert composite_dynamic(0, 0.01, v) == pytest.approx(2 / 3, abs=1e-15)


def test_variants_agree_at_start():
    n = np.arange(0, 5)
    a = composite_dynamic(n, 0.01, Variant.EPS_CUBED)
    b = composite_dynamic(n, 0.01, Variant.EPS_THREE_HALVES)
    assert a[0] == b[0]


def test_composite_plateau_amplitude():
    eps = 0.01
    K = solve_K(eps).K
    assert plateau_deviation(eps, variant=Variant.EPS_CUBED) <= 5 * eps * K
    assert plateau_deviation(eps, variant=Variant.EPS_THREE_HALVES) > 0.5


def test_composite_large_t_amplitude():
    eps = 0.01
    n = 3000
    _, amp = composite_envelope(n, eps)
    assert amp == pytest.approx(math.sqrt(eps**2 * n) / 3, rel=0.02)


def test_composite_transition_position_and_width():
    eps = 0.01
    N = 3500
    x = exact_trajectory("dynamic", eps, N)
    comp = composite_dynamic(np.arange(N + 1), eps)
    K = solve_K(eps).K
    n_star, _ = dynamic_breakdown(eps)
    assert np.max(np.abs(x - comp)[: int(0.8 * n_star)]) < eps**2

    def onset(y, level):
        return int(np.argmax(np.abs(np.diff(y)) / 2 >= level))

    # the half-swing reaches each level at nearly the same n (width 1/(eps K) in n)
    for level in (0.005, 0.02, 0.05):
        assert abs(onset(x, level) - onset(comp, level)) * eps * K <= 0.5


def test_composite_lambda_cap():
    with pytest.raises(RangeError):
        composite_dynamic(10**5, 0.01)


def test_breakdown_frame():
    eps = 0.01
    n_star, frame = dynamic_breakdown(eps)
    K = solve_K(eps).K
    assert n_star == pytest.approx(389.6, abs=0.1)
    assert frame.delta * eps**1.5 / math.sqrt(K) == pytest.approx(1.0, abs=1e-15)
    assert frame.delta * math.exp(-K * K / 2) == pytest.approx(1.0, rel=1e-10)
    assert frame.K0 == K and frame.K1 == pytest.approx(1 / K)
    for n in range(20):
        m = frame.m_of_n(n)
        assert (m - n) % 2 == 0
        assert n == pytest.approx(K / eps - frame.gamma + m, abs=1e-9)


def test_matching_constant_dynamic():
    assert matching_constant_dynamic() == KAPPA_DYNAMIC == Fraction(324)
    assert abs(matching_ratio_dynamic(0.01, -20.0) - 1) <= 1e-6
    assert matching_ratio_dynamic(0.01, -20.0, kappa=9.0) == pytest.approx(6.0, rel=1e-4)
    with pytest.raises(MatchFailure):
        matching_constant_dynamic(kappa=9.0)

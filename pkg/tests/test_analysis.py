import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from asymlog import analysis
from asymlog.dynamic import Variant, composite_dynamic
from asymlog.errors import DegenerateFit, UnknownFigure
from asymlog.static import static_breakdown


@given(st.floats(0.5, 5.0), st.floats(-3, 3))
def test_slope_fit_recovers_power_law(p, logc):
    eps = [0.04, 0.02, 0.01, 0.005]
    rep = analysis.slope_fit([(e, math.exp(logc) * e**p) for e in eps])
    assert abs(rep.fitted_slope - p) <= 1e-12
    assert rep.fit_r2 == pytest.approx(1.0, abs=1e-12)
    assert 0.0 <= rep.fit_r2 <= 1.0


def test_slope_fit_errors():
    with pytest.raises(DegenerateFit):
        analysis.slope_fit([(0.01, 1.0), (0.01, 2.0), (0.01, 3.0)])
    with pytest.raises(ValueError):
        analysis.slope_fit([(0.01, 1.0), (0.02, 2.0)])
    with pytest.raises(ValueError):
        analysis.slope_fit([(0.01, 1.0), (0.02, 0.0), (0.04, 1.0)])


def test_synthetic_three_halves():
    rep = analysis.slope_fit([(e, e**1.5) for e in analysis.STATIC_LADDER])
    assert rep.fitted_slope == pytest.approx(1.5, abs=1e-12)
    assert len(rep.epsilons) == len(rep.errors) == 5


def test_sup_norm_of_exact_is_zero():
    assert analysis.sup_norm_error(0.02, "static-exact", (0, 300)) == 0.0
    assert analysis.sup_norm_error(0.01, "dynamic-exact", (0, 300)) == 0.0


def test_sup_norm_static_composite_is_small():
    eps = 0.02
    n_star, _ = static_breakdown(eps)
    err = analysis.sup_norm_error(eps, "static-composite", (0, int(3 * n_star)))
    assert 0 < err <= 2 * eps**1.5


def test_sup_norm_grows_past_breakdown():
    eps = 0.02
    n_star, _ = static_breakdown(eps)
    inside = analysis.sup_norm_error(eps, "static-early-0", (0, int(n_star - 20)))
    past = analysis.sup_norm_error(eps, "static-early-0", (0, int(n_star + 30)))
    assert past > inside


def test_sup_norm_bad_input():
    with pytest.raises(ValueError):
        analysis.sup_norm_error(0.02, "static-composite", (10, 5))
    with pytest.raises(ValueError):
        analysis.approximant_values("nope", 0.02, [1])


def test_approximant_registry_names():
    n = np.arange(5)
    for name in ("static-composite", "static-early-2", "dynamic-early-0", "dynamic-early-1",
                 "dynamic-composite", "dynamic-composite-eps3/2"):
        vals = analysis.approximant_values(name, 0.02, n)
        assert vals.shape == (5,)
        assert vals[0] == pytest.approx(2 / 3, abs=0.02**1.5)


def test_nearest_by_parity():
    assert analysis.nearest_by_parity(10.2) == (10, 11)
    assert analysis.nearest_by_parity(10.7) == (10, 11)
    assert analysis.nearest_by_parity(11.6) == (12, 11)
    even, odd = analysis.nearest_by_parity(0.3)
    assert even == 0 and odd == 1


@pytest.mark.parametrize("rule", ["a", "b", "c"])
@pytest.mark.parametrize("eps", [0.014, 0.01, 0.007, 0.005])
def test_branch_selection_picks_worse_branch(rule, eps):
    n, err = analysis.dynamic_point_error(eps, rule)
    K = analysis.dynamic.solve_K(eps).K
    target = {"a": math.floor(1 / eps), "b": (K + 1 / K) / eps, "c": (K + 15 / K) / eps}[rule]
    even, odd = analysis.nearest_by_parity(target)
    assert n in (even, odd)
    x = analysis.exact_trajectory("dynamic", eps, max(even, odd))
    errs = [abs(x[k] - composite_dynamic(k, eps)) for k in (even, odd)]
    assert err == max(errs)
    assert abs(even - target) <= 1 and abs(odd - target) <= 1


def test_branch_rule_literal_floor():
    n, _ = analysis.dynamic_point_error(0.007, "a", branch_select=False)
    assert n == math.floor(1 / 0.007)
    with pytest.raises(ValueError):
        analysis.dynamic_point_error(0.01, "d")


def test_early_static_error_reports_worse_branch():
    eps = 0.01
    n, err = analysis.early_static_error(eps, 100.4, 0)
    assert n in (100, 101)
    assert err > 0


def test_exponent_resolution_prefers_eps_cubed():
    dec = analysis.exponent_resolution()
    assert dec.chosen == Variant.EPS_CUBED.value
    assert not dec.inconclusive
    assert set(dec.slopes) == {v.value for v in Variant}
    assert dec.mean_errors["eps3"] < dec.mean_errors["eps3/2"]
    d = dec.as_dict()
    assert d["passing"] == ["eps3"]
    with pytest.raises(ValueError):
        analysis.exponent_resolution([0.01, 0.005, 0.007])
    with pytest.raises(ValueError):
        analysis.exponent_resolution([0.04, 0.01, 0.005, 0.007])


def test_figure_tables_deterministic_and_well_formed():
    for which in range(1, 10):
        a = analysis.figure_data(which).to_csv()
        b = analysis.figure_data(which).to_csv()
        assert a == b
        lines = a.split("\n")
        assert lines[-1] == "" and "\r" not in a
        width = len(lines[0].split(","))
        assert all(len(line.split(",")) == width for line in lines[1:-1])


def test_figure_markers_and_slopes():
    fig3 = analysis.figure_data(3)
    col = fig3.header.index("n_star")
    assert fig3.rows[0][col] == pytest.approx(math.log(50) / 0.04)
    fig5 = analysis.figure_data(5)
    assert fig5.header[-2:] == ("fitted_slope", "fit_r2")
    fig9 = analysis.figure_data(9)
    assert {row[0] for row in fig9.rows} == {"a", "b", "c"}


def test_figure_errors():
    with pytest.raises(UnknownFigure):
        analysis.figure_data(10)
    with pytest.raises(UnknownFigure):
        analysis.figure_data("x")
    with pytest.raises(ValueError):
        analysis.figure_data(2, bogus=1)


def test_csv_formatting():
    text = analysis.to_csv(("a", "b", "c"), [(1, 0.1, "x"), (2, float("nan"), True)])
    assert text == "a,b,c\n1,0.10000000000000001,x\n2,nan,1\n"


def test_plateau_deviation_ranges():
    assert analysis.plateau_deviation(0.01) < 0.05
    assert analysis.plateau_deviation(0.01, variant=Variant.EPS_THREE_HALVES) > 0.5

import csv
import io
import json
import math

import pytest

from asymlog.cli import build_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_simulate_example(capsys):
    code, out, _ = run(capsys, "simulate", "--map", "static", "--epsilon", "0.02", "--n-max", "5")
    assert code == 0
    table = rows(out)
    assert table[0] == ["n", "t", "x"]
    assert len(table) == 7
    assert float(table[1][2]) == 2 / 3
    assert "\r" not in out and out.endswith("\n")


def test_k_solve_example(capsys):
    code, out, _ = run(capsys, "k-solve", "--epsilon", "0.01")
    assert code == 0
    rec = json.loads(out)
    assert {"epsilon", "K", "residual", "iterations"} <= set(rec)
    assert rec["epsilon"] == 0.01
    assert abs(rec["residual"]) <= 1e-12
    assert rec["K"] == pytest.approx(3.896, abs=1e-3)
    assert list(rec) == sorted(rec)


def test_figure_5_slope_column(capsys):
    code, out, _ = run(capsys, "figure", "5")
    assert code == 0
    table = rows(out)
    col = table[0].index("fitted_slope")
    slope = float(table[1][col])
    assert 1.2 < slope < 1.6


def test_json_table_format(capsys):
    code, out, _ = run(capsys, "static-composite", "--n-max", "3", "--format", "json")
    assert code == 0
    recs = json.loads(out)
    assert len(recs) == 4
    assert set(recs[0]) == {"n", "x_exact", "x_composite"}


def test_nan_becomes_null_in_json(capsys):
    code, out, _ = run(capsys, "static-early", "--order", "0", "--n-max", "2", "--format", "json")
    assert code == 0
    assert all(math.isfinite(r["x_early"]) for r in json.loads(out))


def test_output_file(tmp_path, capsys):
    path = tmp_path / "o.csv"
    code, out, _ = run(capsys, "dynamic-early", "--n-max", "10", "--output", str(path))
    assert code == 0 and out == ""
    assert rows(path.read_text())[0] == ["n", "x_exact", "x_early"]


def test_gallery_records(capsys):
    for which in ("regular", "bl", "decay", "blowup"):
        code, out, _ = run(capsys, "gallery", which)
        assert code == 0
        assert json.loads(out)["map"] == which
    code, out, _ = run(capsys, "gallery", "bl", "--format", "csv")
    assert code == 0
    header = rows(out)[0]
    assert header == sorted(header)


def test_error_scan_custom_ladder(capsys):
    code, out, _ = run(capsys, "error-scan", "static", "--epsilons", "0.04,0.02,0.01")
    assert code == 0
    table = rows(out)
    assert len(table) == 4
    assert table[0] == ["epsilon", "n", "error", "fitted_slope", "fit_r2"]


@pytest.mark.parametrize("argv", [
    [],
    ["nope"],
    ["simulate", "--epsilon", "-1"],
    ["simulate", "--epsilon", "abc"],
    ["figure", "10"],
    ["static-early", "--order", "-2"],
    ["dynamic-early", "--order", "2"],
    ["simulate", "--n-max", "0"],
    ["simulate", "--format", "xml"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert err


@pytest.mark.parametrize("argv", [
    ["dynamic-composite", "--epsilon", "0.01", "--n-max", "100000"],
    ["simulate", "--map", "dynamic", "--epsilon", "0.1", "--n-max", "1000"],
    ["k-solve", "--epsilon", "0.5"],
    ["error-scan", "static", "--epsilons", "0.01,0.02"],
])
def test_computation_errors_exit_1(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1
    assert out == ""
    assert err.startswith("asymlog: error")


def test_help_lists_every_subcommand(capsys):
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args(["--help"])
    assert exc.value.code == 0
    text = capsys.readouterr().out
    for cmd in ("simulate", "bifurcation", "static-early", "static-composite", "dynamic-early",
                "dynamic-composite", "k-solve", "error-scan", "figure", "gallery", "resolve-exponent"):
        assert cmd in text

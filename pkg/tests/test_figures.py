import csv
from fractions import Fraction

import pytest

from models.figure import FigureKind, FigureSpec
from services import figures


def read_rows(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def test_pmf_panel_fair_coin(tmp_path):
    spec = FigureSpec(figure=FigureKind.PMF_PANELS, panels=[(2, "1/2")])
    (path,) = figures.write_figure(spec, tmp_path)
    assert path.name == "pmf_m2_p1-2.csv"
    assert path.read_bytes() == b"k,probability\n0,1/4\n1,1/2\n2,1/4\n"


def test_pmf_preset_writes_three_files(tmp_path):
    paths = figures.write_figure(FigureSpec.preset(FigureKind.PMF_PANELS), tmp_path)
    assert [p.name for p in paths] == ["pmf_m20_p1-2.csv", "pmf_m20_p1-10.csv", "pmf_m5_p1-10.csv"]
    rows = read_rows(paths[0])
    assert len(rows) == 21
    assert sum(Fraction(r["probability"]) for r in rows) == 1


def test_tail_grid_contains_gridlines():
    grid = figures.tail_grid(3, Fraction(1, 10))
    assert Fraction(1, 3) in grid and Fraction(2, 3) in grid
    assert grid[0] == 0 and grid[-1] == 1
    assert grid == sorted(set(grid))
    edges = figures.tail_grid(3, Fraction(1, 10), edges=True)
    assert Fraction(1, 3) + Fraction(1, 10**9) in edges
    assert len(edges) == len(grid) + 3


def test_region():
    assert figures.region(4, Fraction(1, 4)) == "dotted"
    assert figures.region(4, Fraction(1, 4) + Fraction(1, 10**9)) == "solid"


def test_tail_curves_stay_above_quarter(tmp_path):
    spec = FigureSpec.preset(FigureKind.TAIL_CURVES)
    (path,) = figures.write_figure(spec, tmp_path)
    rows = read_rows(path)
    assert list(rows[0]) == ["p", "m", "F(m,p)", "region"]
    assert {int(r["m"]) for r in rows} == set(range(2, 9))
    solid = [r for r in rows if r["region"] == "solid"]
    assert solid and all(float(r["F(m,p)"]) > 0.25 for r in solid)
    assert all(float(r["p"]) <= 1 / int(r["m"]) for r in rows if r["region"] == "dotted")


def test_grid_vs_bound_rows(tmp_path):
    (path,) = figures.write_figure(FigureSpec.preset(FigureKind.GRID_VS_BOUND), tmp_path)
    rows = read_rows(path)
    assert list(rows[0]) == ["m", "k", "exact_grid_cdf", "lemma2_bound", "reference_0.75"]
    assert len(rows) == sum(m - 1 for m in (2, 22, 42, 62, 72))
    assert all(float(r["exact_grid_cdf"]) <= float(r["lemma2_bound"]) for r in rows)
    assert all(r["reference_0.75"] == "0.75" for r in rows)


def test_csv_uses_unix_line_endings(tmp_path):
    (path,) = figures.write_figure(FigureSpec(figure=FigureKind.GRID_VS_BOUND, ms=[3]), tmp_path)
    assert b"\r" not in path.read_bytes()


@pytest.mark.parametrize(
    "kwargs",
    [
        {"figure": FigureKind.PMF_PANELS},
        {"figure": FigureKind.TAIL_CURVES},
        {"figure": FigureKind.GRID_VS_BOUND, "ms": [1]},
        {"figure": FigureKind.TAIL_CURVES, "ms": [3], "step": "0"},
    ],
)
def test_spec_validation(kwargs):
    with pytest.raises(ValueError):
        FigureSpec(**kwargs)

"""``figure``: CSV data for the PMF, tail-curve and grid-bound plots."""

from fractions import Fraction
from pathlib import Path
from typing import Tuple

import click

from commands.params import RATIONAL
from models.figure import DEFAULT_TAIL_STEP, FigureKind, FigureSpec
from services.figures import write_figure

out_dir_option = click.option(
    "--out-dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=Path("."),
    show_default=True,
    help="Directory receiving the CSV file(s).",
)
ms_option = click.option("-m", "ms", type=int, multiple=True, help="Trial count; repeat for several curves.")


def _write(spec: FigureSpec, out_dir: Path) -> int:
    for path in write_figure(spec, out_dir):
        click.echo(str(path))
    return 0


@click.group("figure")
def figure_group():
    """Emit figure data as CSV."""


@figure_group.command("pmf-panels")
@click.option("--panel", "panels", type=(int, RATIONAL), multiple=True, help="An (m, p) pair; repeatable.")
@out_dir_option
def pmf_panels_cmd(panels: Tuple[Tuple[int, Fraction], ...], out_dir: Path) -> int:
    """One k,probability file per (m, p) panel."""
    spec = FigureSpec(figure=FigureKind.PMF_PANELS, panels=list(panels)) if panels else FigureSpec.preset(FigureKind.PMF_PANELS)
    return _write(spec, out_dir)


@figure_group.command("tail-curves")
@ms_option
@click.option("--step", type=RATIONAL, default=str(DEFAULT_TAIL_STEP), show_default=True, help="Spacing of the p grid.")
@click.option("--edges", is_flag=True, help="Also sample k/m + 1e-9 next to every gridline.")
@out_dir_option
def tail_curves_cmd(ms: Tuple[int, ...], step: Fraction, edges: bool, out_dir: Path) -> int:
    """F(m, p) along a p grid, marking where the lower bound applies."""
    preset = FigureSpec.preset(FigureKind.TAIL_CURVES)
    spec = FigureSpec(figure=FigureKind.TAIL_CURVES, ms=list(ms) or preset.ms, step=step, edges=edges)
    return _write(spec, out_dir)


@figure_group.command("grid-vs-bound")
@ms_option
@out_dir_option
def grid_vs_bound_cmd(ms: Tuple[int, ...], out_dir: Path) -> int:
    """Exact grid CDF next to its Camp-Paulson upper bound."""
    preset = FigureSpec.preset(FigureKind.GRID_VS_BOUND)
    spec = FigureSpec(figure=FigureKind.GRID_VS_BOUND, ms=list(ms) or preset.ms)
    return _write(spec, out_dir)

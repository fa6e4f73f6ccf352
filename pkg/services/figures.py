"""Data series behind the three plots, written as CSV.

Only the numbers are produced; plotting is left to whatever reads the files.
"""

import csv
import logging
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterator, List, Sequence, Tuple

from models.figure import FigureKind, FigureSpec
from models.probability import BinomialParams
from services import bound_chain as bc
from services import exact_binomial as eb
from utils.rationals import format_rational, format_real

log = logging.getLogger(__name__)

EDGE_OFFSET = Fraction(1, 10**9)

PMF_COLUMNS = ["k", "probability"]
TAIL_COLUMNS = ["p", "m", "F(m,p)", "region"]
GRID_COLUMNS = ["m", "k", "exact_grid_cdf", "lemma2_bound", "reference_0.75"]

Row = Dict[str, str]


def pmf_rows(m: int, p: Fraction) -> Iterator[Row]:
    params = BinomialParams(m=m, p=p)
    for k in range(m + 1):
        yield {"k": str(k), "probability": format_rational(eb.pmf(params, k))}


def pmf_filename(m: int, p: Fraction) -> str:
    return f"pmf_m{m}_p{p.numerator}-{p.denominator}.csv"


def tail_grid(m: int, step: Fraction, edges: bool = False) -> List[Fraction]:
    """The step grid on [0, 1] plus every gridline k/m, sorted and deduplicated."""
    points = set()
    p = Fraction(0)
    while p <= 1:
        points.add(p)
        p += step
    points.add(Fraction(1))
    for k in range(m + 1):
        points.add(Fraction(k, m))
        if edges and k < m:
            points.add(Fraction(k, m) + EDGE_OFFSET)
    return sorted(points)


def region(m: int, p: Fraction) -> str:
    """dotted where the lower bound does not apply (p <= 1/m), solid elsewhere."""
    return "dotted" if p <= Fraction(1, m) else "solid"


def tail_curve_rows(ms: Sequence[int], step: Fraction, edges: bool = False) -> Iterator[Row]:
    for m in ms:
        for p in tail_grid(m, step, edges):
            f_value = eb.upper_tail_value(m, p, eb.mean_threshold(m, p))
            yield {
                "p": format_real(float(p)),
                "m": str(m),
                "F(m,p)": format_real(float(f_value)),
                "region": region(m, p),
            }


def grid_vs_bound_rows(ms: Sequence[int]) -> Iterator[Row]:
    for m in ms:
        for k in range(1, m):
            yield {
                "m": str(m),
                "k": str(k),
                "exact_grid_cdf": format_real(float(eb.grid_cdf(m, k))),
                "lemma2_bound": format_real(bc.lemma2_bound(m, k)),
                "reference_0.75": format_real(float(bc.LEMMA4_BOUND)),
            }


def write_csv(path: Path, columns: List[str], rows: Iterator[Row]) -> int:
    count = 0
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
            count += 1
    log.info("Wrote %s rows to %s", count, path)
    return count


def figure_tables(spec: FigureSpec) -> List[Tuple[str, List[str], Iterator[Row]]]:
    """(file name, columns, rows) for every file the figure produces."""
    if spec.figure is FigureKind.PMF_PANELS:
        return [(pmf_filename(m, p), PMF_COLUMNS, pmf_rows(m, p)) for m, p in spec.panels]
    if spec.figure is FigureKind.TAIL_CURVES:
        return [("tail_curves.csv", TAIL_COLUMNS, tail_curve_rows(spec.ms, spec.step, spec.edges))]
    return [("grid_vs_bound.csv", GRID_COLUMNS, grid_vs_bound_rows(spec.ms))]


def write_figure(spec: FigureSpec, out_dir: Path) -> List[Path]:
    """Write the figure's CSV files under ``out_dir``; OSError propagates."""
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name, columns, rows in figure_tables(spec):
        path = out_dir / name
        write_csv(path, columns, rows)
        written.append(path)
    return written

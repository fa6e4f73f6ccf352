"""``verify``: run certification sweeps and report margins."""

import logging
from pathlib import Path
from typing import Optional, Tuple

import click
from pydantic import ValidationError

from commands.params import format_option
from core.config import settings
from models.certificate import ClaimId, SweepConfig
from models.figure import OutputFormat
from services.verify_harness import run_claim, serialize_reports
from utils.render import render_failures, render_reports

log = logging.getLogger(__name__)

ALL = "all"
EXIT_VERIFICATION_FAILED = 1

FLAG_NAMES = {
    "max_m": "--max-m",
    "p_denominator_limit": "--denom",
    "grid_points_per_interval": "--grid",
    "seed": "--seed",
    "max_k": "--max-k",
}


def _sweep_config(**flags) -> SweepConfig:
    overrides = {name: value for name, value in flags.items() if value is not None}
    try:
        return SweepConfig(**overrides)
    except ValidationError as exc:
        error = exc.errors()[0]
        field_name = str(error["loc"][0]) if error["loc"] else ""
        raise click.BadParameter(error["msg"], param_hint=FLAG_NAMES.get(field_name, field_name)) from None


@click.command("verify")
@click.argument(
    "claims",
    nargs=-1,
    type=click.Choice([c.value for c in ClaimId] + [ALL], case_sensitive=False),
)
@click.option("--max-m", type=int, default=None, help=f"Largest m swept [default: {settings.MAX_M}].")
@click.option("--denom", "p_denominator_limit", type=int, default=None, help="Largest denominator of swept p.")
@click.option("--grid", "grid_points_per_interval", type=int, default=None, help="Interior samples per interval.")
@click.option("--seed", type=int, default=None, help="Seed of randomized sampling.")
@click.option("--max-k", type=int, default=None, help="Largest k of the ratio sweep.")
@click.option("--workers", type=int, default=settings.WORKERS, show_default=True, help="Worker processes.")
@click.option("--output", type=click.Path(dir_okay=False, path_type=Path), default=None, help="Also write the JSON reports here.")
@format_option(OutputFormat.PLAIN)
def verify_cmd(
    claims: Tuple[str, ...],
    max_m: Optional[int],
    p_denominator_limit: Optional[int],
    grid_points_per_interval: Optional[int],
    seed: Optional[int],
    max_k: Optional[int],
    workers: int,
    output: Optional[Path],
    fmt: OutputFormat,
) -> int:
    """Check CLAIMS (default: all) and exit 1 if any fails."""
    config = _sweep_config(
        max_m=max_m,
        p_denominator_limit=p_denominator_limit,
        grid_points_per_interval=grid_points_per_interval,
        seed=seed,
        max_k=max_k,
    )
    selected = _selected_claims(claims)
    reports = [run_claim(claim_id, config, workers) for claim_id in selected]

    if output is not None:
        output.write_text(serialize_reports(reports), encoding="utf-8")
        log.info("Wrote %s reports to %s", len(reports), output)
    click.echo(render_reports(reports, fmt), nl=False)

    if all(r.passed for r in reports):
        return 0
    click.echo(render_failures(reports), nl=False, err=True)
    return EXIT_VERIFICATION_FAILED


def _selected_claims(claims: Tuple[str, ...]):
    names = [c.upper() for c in claims]
    if not names or ALL.upper() in names:
        return list(ClaimId)
    # keep enumeration order, drop repeats
    return [claim_id for claim_id in ClaimId if claim_id.value in names]

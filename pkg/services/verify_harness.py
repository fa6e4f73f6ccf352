"""Certification sweeps over the claim registry."""

import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Any, Iterable, List, Optional, Union

from core.config import settings
from models.certificate import CertificateReport, ClaimId, SweepConfig
from services.claims import Margin, MarginTracker, Witness, get_claim, serialize_margin

log = logging.getLogger(__name__)


def _evaluate_cell(claim_id: ClaimId, config: SweepConfig, cell: Any) -> MarginTracker:
    return get_claim(claim_id).check_cell(cell, config)


def _collect(claim_id: ClaimId, config: SweepConfig, cells: List[Any], workers: int) -> Iterable[MarginTracker]:
    evaluate = partial(_evaluate_cell, claim_id, config)
    if workers <= 1 or len(cells) < 2:
        return map(evaluate, cells)
    # map() yields in submission order, so merging stays deterministic
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(evaluate, cells, chunksize=max(1, len(cells) // (4 * workers))))


def run_claim(
    claim_id: Union[ClaimId, str],
    config: Optional[SweepConfig] = None,
    workers: Optional[int] = None,
) -> CertificateReport:
    """Sweep one claim and return its certificate."""
    claim = get_claim(claim_id)
    config = config or SweepConfig.from_settings()
    workers = settings.WORKERS if workers is None else workers

    log.info("Checking %s", claim.claim_id.value)
    start = time.perf_counter()
    cells = list(claim.cells(config))
    total = MarginTracker(strict=claim.strict)
    for tracker in _collect(claim.claim_id, config, cells, workers):
        total.merge(tracker)
    elapsed = time.perf_counter() - start

    for text in total.notes:
        log.warning("%s: %s", claim.claim_id.value, text)
    log.info(
        "%s checked %s observations, worst margin %s, in %.2f seconds",
        claim.claim_id.value,
        total.checked,
        serialize_margin(total.worst),
        elapsed,
    )
    return CertificateReport(
        claim=claim.claim_id,
        config=config,
        passed=total.passed,
        strict=claim.strict,
        worst_margin=serialize_margin(total.worst),
        worst_witness=total.witness,
        checked_count=total.checked,
        notes=total.notes,
        failures=total.failures,
        elapsed=elapsed,
    )


def run_all(config: Optional[SweepConfig] = None, workers: Optional[int] = None) -> List[CertificateReport]:
    """One report per ClaimId, in enumeration order."""
    reports = [run_claim(claim_id, config, workers) for claim_id in ClaimId]
    log.info("Overall: %s", "PASS" if all(r.passed for r in reports) else "FAIL")
    return reports


def replay_witness(
    claim_id: Union[ClaimId, str], witness: Witness, config: Optional[SweepConfig] = None
) -> Margin:
    """Recompute the margin of a single reported witness."""
    claim = get_claim(claim_id)
    return claim.replay(witness, config or SweepConfig.from_settings())


def serialize_reports(reports: List[CertificateReport]) -> str:
    """Stable JSON text of a report stream."""
    return json.dumps([r.to_json_dict() for r in reports], indent=2, sort_keys=True) + "\n"

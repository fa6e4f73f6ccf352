import json
from fractions import Fraction

import pytest

from core.errors import UnknownClaimError
from models.bounds import ApproxCdfResult
from models.certificate import ClaimId, SweepConfig
from services import bound_chain as bc
from services import camp_paulson as cp
from services import exact_binomial as eb
from services.claims import MAX_LISTED, MarginTracker, get_claim, serialize_margin
from services.verify_harness import replay_witness, run_all, run_claim, serialize_reports


def test_tracker_strictness():
    strict = MarginTracker(strict=True)
    strict.observe(Fraction(0), {"m": 2})
    assert not strict.passed
    relaxed = MarginTracker(strict=False)
    relaxed.observe(Fraction(0), {"m": 2})
    assert relaxed.passed
    relaxed.observe(Fraction(0), {"m": 3}, strict=True)
    assert relaxed.failures == [{"m": 3}]


def test_tracker_keeps_first_worst_and_caps_failures():
    tracker = MarginTracker(strict=False)
    for i in range(MAX_LISTED + 5):
        tracker.observe(-1.0, {"i": i})
    assert tracker.witness == {"i": 0}
    assert len(tracker.failures) == MAX_LISTED
    assert tracker.checked == MAX_LISTED + 5


def test_soft_observations_only_note():
    tracker = MarginTracker(strict=False)
    tracker.observe_soft(-0.5, {"j": 1})
    assert tracker.passed and tracker.worst is None and tracker.checked == 1
    assert tracker.notes and "j=1" in tracker.notes[0]


def test_merge_takes_smaller_worst():
    left, right = MarginTracker(strict=False), MarginTracker(strict=False)
    left.observe(Fraction(1, 2), {"m": 2})
    right.observe(0.25, {"m": 3})
    left.merge(right)
    assert left.worst == 0.25 and left.witness == {"m": 3} and left.checked == 2


def test_serialize_margin():
    assert serialize_margin(Fraction(3, 8)) == "3/8"
    assert serialize_margin(0.1) == "0.1"
    assert serialize_margin(None) == "n/a"


def test_unknown_claim():
    with pytest.raises(UnknownClaimError):
        get_claim("BOGUS")
    with pytest.raises(UnknownClaimError):
        run_claim("BOGUS")


@pytest.mark.parametrize("claim_id", list(ClaimId))
def test_every_claim_passes_small_sweep(claim_id, small_config):
    report = run_claim(claim_id, small_config, workers=1)
    assert report.passed, report.failures
    assert report.checked_count > 0
    assert report.claim is claim_id


@pytest.mark.parametrize("claim_id", list(ClaimId))
def test_worst_witness_replays(claim_id, small_config):
    report = run_claim(claim_id, small_config, workers=1)
    margin = replay_witness(claim_id, report.worst_witness, small_config)
    assert serialize_margin(margin) == report.worst_margin


def test_theorem_worst_witness_near_half(small_config):
    report = run_claim(ClaimId.THEOREM_MAIN, small_config)
    assert report.strict
    assert report.worst_witness["m"] == 2
    assert Fraction(report.worst_witness["p"]) > Fraction(1, 2)
    assert Fraction(report.worst_margin) > 0


def test_rho_boundary_is_noted(small_config):
    report = run_claim(ClaimId.LEMMA4_RHO, small_config)
    assert report.passed and not report.strict
    assert report.worst_margin == "0"
    assert report.worst_witness == {"m": 2}
    assert any("m=2" in note for note in report.notes)


def test_corollary2_worst_margin_is_exact(small_config):
    report = run_claim(ClaimId.COR2_CONSTANT, small_config)
    largest = max(eb.grid_cdf(m, k) for m in range(3, small_config.max_m + 1) for k in range(2, m))
    assert Fraction(report.worst_margin) == bc.COROLLARY2_BOUND - largest


def test_envelope_break_away_from_mean_fails(monkeypatch, small_config):
    original = cp.camp_paulson_cdf

    def shifted(m, p, j, full_support_exact=False):
        result = original(m, p, j, full_support_exact)
        if m * p == j:
            return result
        return ApproxCdfResult(estimate=min(1.0, result.estimate + 0.05), error_bound=result.error_bound)

    monkeypatch.setattr(cp, "camp_paulson_cdf", shifted)
    report = run_claim(ClaimId.CAMP_PAULSON_ERR, small_config, workers=1)
    assert not report.passed
    assert report.failures
    assert all(Fraction(w["p"]) * w["m"] != w["j"] for w in report.failures)


def test_envelope_off_grid_is_only_noted(monkeypatch, small_config):
    original = cp.camp_paulson_cdf

    def shifted(m, p, j, full_support_exact=False):
        result = original(m, p, j, full_support_exact)
        if (m * p).denominator == 1:
            return result
        return ApproxCdfResult(estimate=min(1.0, result.estimate + 0.05), error_bound=result.error_bound)

    monkeypatch.setattr(cp, "camp_paulson_cdf", shifted)
    report = run_claim(ClaimId.CAMP_PAULSON_ERR, small_config, workers=1)
    assert report.passed
    assert report.notes


def test_degenerate_sweep(small_config):
    config = small_config.model_copy(update={"max_m": 2})
    reports = run_all(config)
    assert [r.claim for r in reports] == list(ClaimId)
    assert all(r.passed for r in reports)
    cor2 = next(r for r in reports if r.claim is ClaimId.COR2_CONSTANT)
    assert cor2.checked_count == 0 and cor2.worst_margin == "n/a" and cor2.worst_witness == {}


def test_serialized_reports_are_deterministic(small_config):
    first = serialize_reports(run_all(small_config))
    second = serialize_reports(run_all(small_config))
    assert first == second
    payload = json.loads(first)
    assert len(payload) == len(ClaimId)
    assert "elapsed" not in payload[0] and "pass" in payload[0]


def test_worker_count_does_not_change_reports(small_config):
    serial = run_claim(ClaimId.THEOREM_MAIN, small_config, workers=1)
    pooled = run_claim(ClaimId.THEOREM_MAIN, small_config, workers=2)
    assert serialize_reports([serial]) == serialize_reports([pooled])


def test_config_validation():
    with pytest.raises(ValueError):
        SweepConfig(max_m=0)
    with pytest.raises(ValueError):
        SweepConfig(seed=2**64)


@pytest.mark.slow
def test_full_default_sweep():
    reports = run_all(SweepConfig.from_settings())
    assert all(r.passed for r in reports)


@pytest.mark.slow
def test_corollary2_to_two_hundred():
    report = run_claim(ClaimId.COR2_CONSTANT, SweepConfig(max_m=200))
    assert report.passed


@pytest.mark.slow
def test_lemma2_domination_to_two_hundred():
    report = run_claim(ClaimId.LEMMA2_DOMINATION, SweepConfig(max_m=200))
    assert report.passed, report.failures


@pytest.mark.slow
def test_envelope_to_two_hundred():
    report = run_claim(ClaimId.CAMP_PAULSON_ERR, SweepConfig(max_m=200))
    assert report.passed, report.failures
    assert all("check=monotone" in note for note in report.notes)


@pytest.mark.slow
def test_rho_to_five_hundred():
    report = run_claim(ClaimId.LEMMA4_RHO, SweepConfig(max_m=500, derivative_samples=50))
    assert report.passed, report.failures
    assert report.worst_witness == {"m": 2}


@pytest.mark.slow
def test_corollary3_denominators_to_fifty():
    report = run_claim(ClaimId.COR3_SYMMETRY, SweepConfig(max_m=50, p_denominator_limit=50))
    assert report.passed, report.failures


@pytest.mark.slow
def test_lemma1_monotone_to_fifty():
    config = SweepConfig(max_m=50, grid_points_per_interval=100)
    for claim_id in (ClaimId.LEMMA1_MONOTONE, ClaimId.LEMMA1_GRID_LB):
        report = run_claim(claim_id, config)
        assert report.passed, report.failures

"""Check routines, one per ClaimId.

A claim is split into independent cells (usually one per m). Each cell is
evaluated sequentially into a ``MarginTracker``; the harness merges the
trackers in cell order. Every claim also knows how to replay a single
witness, so a reported worst margin can be re-derived on its own.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple, Union

import numpy as np

from core.errors import UnknownClaimError
from models.bounds import ApproxCdfResult
from models.certificate import ClaimId, SweepConfig
from models.probability import BinomialParams
from services import bound_chain as bc
from services import camp_paulson as cp
from services import exact_binomial as eb
from utils.rationals import farey

Margin = Union[Fraction, float]
Witness = Dict[str, Union[int, str]]

MAX_LISTED = 20
RATIO_BLOCK = 1000
RATIO_EQUALITY_SLACK = 1e-12
DERIVATIVE_RANGE = (2.0, 500.0)
DERIVATIVE_REL_TOL = 1e-6
ENDPOINT_SLACK = 1e-12
CP_P_GRID = tuple(Fraction(i, 10) for i in range(1, 10))


@dataclass
class MarginTracker:
    """Running worst margin of a stream of inequality observations."""

    strict: bool
    worst: Optional[Margin] = None
    witness: Witness = field(default_factory=dict)
    checked: int = 0
    failures: List[Witness] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def observe(self, margin: Margin, witness: Witness, strict: Optional[bool] = None) -> None:
        self.checked += 1
        is_strict = self.strict if strict is None else strict
        if margin < 0 or (is_strict and margin == 0):
            if len(self.failures) < MAX_LISTED:
                self.failures.append(dict(witness))
        if self.worst is None or margin < self.worst:
            self.worst = margin
            self.witness = dict(witness)

    def observe_soft(self, margin: Margin, witness: Witness) -> None:
        """Count an observation whose violation is reported but not failed."""
        self.checked += 1
        if margin < 0:
            self.note(f"flagged {_describe(witness)} margin={serialize_margin(margin)}")

    def count(self, n: int = 1) -> None:
        self.checked += n

    def note(self, text: str) -> None:
        if len(self.notes) < MAX_LISTED:
            self.notes.append(text)

    def merge(self, other: "MarginTracker") -> None:
        self.checked += other.checked
        self.failures.extend(other.failures[: MAX_LISTED - len(self.failures)])
        for text in other.notes:
            self.note(text)
        if other.worst is not None and (self.worst is None or other.worst < self.worst):
            self.worst = other.worst
            self.witness = other.witness

    @property
    def passed(self) -> bool:
        return not self.failures


def serialize_margin(margin: Optional[Margin]) -> str:
    if margin is None:
        return "n/a"
    if isinstance(margin, Fraction):
        return str(margin)
    return repr(float(margin))


def _describe(witness: Witness) -> str:
    return " ".join(f"{key}={value}" for key, value in witness.items())


@lru_cache(maxsize=8)
def _p_grid(limit: int) -> Tuple[Fraction, ...]:
    return tuple(farey(limit))


def _m_cells(config: SweepConfig) -> List[int]:
    return list(range(2, config.max_m + 1))


# -- THEOREM_MAIN ---------------------------------------------------------

def _theorem_cell(m: int, config: SweepConfig) -> MarginTracker:
    tracker = MarginTracker(strict=True)
    floor_p = Fraction(1, m)
    for p in _p_grid(config.p_denominator_limit):
        if p <= floor_p:
            continue
        f_value = eb.upper_tail_value(m, p, eb.mean_threshold(m, p))
        tracker.observe(f_value - bc.THEOREM_BOUND, {"m": m, "p": str(p)})
    return tracker


def _theorem_replay(witness: Witness, config: SweepConfig) -> Margin:
    return bc.theorem_margin(int(witness["m"]), str(witness["p"])).margin


# -- LEMMA1_GRID_LB -------------------------------------------------------

def _grid_lb_cell(m: int, config: SweepConfig) -> MarginTracker:
    tracker = MarginTracker(strict=True)
    limits = {k: eb.grid_upper_tail(m, k) for k in range(1, m)}
    floor_p = Fraction(1, m)
    for p in _p_grid(config.p_denominator_limit):
        if p <= floor_p:
            continue
        k = eb.interval_index(m, p)
        f_value = eb.upper_tail_value(m, p, k + 1)
        tracker.observe(f_value - limits[k], {"m": m, "k": k, "p": str(p)})
    return tracker


def _grid_lb_replay(witness: Witness, config: SweepConfig) -> Margin:
    m, p = int(witness["m"]), Fraction(str(witness["p"]))
    k = eb.interval_index(m, p)
    return eb.tail_at_or_above_mean(BinomialParams(m=m, p=p)).value - eb.grid_upper_tail(m, k)


# -- LEMMA1_MONOTONE ------------------------------------------------------

def _interval_samples(m: int, k: int, n: int) -> List[Fraction]:
    """n interior points at offsets j/(n+1) across (k/m, (k+1)/m], then the right end."""
    return [Fraction(k * (n + 1) + j, (n + 1) * m) for j in range(1, n + 2)]


def _monotone_cells(config: SweepConfig) -> List[Tuple[int, int]]:
    return [(m, k) for m in _m_cells(config) for k in range(1, m)]


def _monotone_cell(cell: Tuple[int, int], config: SweepConfig) -> MarginTracker:
    m, k = cell
    tracker = MarginTracker(strict=True)
    samples = _interval_samples(m, k, config.grid_points_per_interval)
    previous = eb.grid_upper_tail(m, k)
    for step, p in enumerate(samples, start=1):
        current = eb.upper_tail_value(m, p, k + 1)
        tracker.observe(current - previous, {"m": m, "k": k, "step": step, "p": str(p)})
        previous = current
    midpoint = samples[(len(samples) - 1) // 2]
    if midpoint < 1:
        slope = eb.mean_tail_derivative(BinomialParams(m=m, p=midpoint))
        if slope <= 0:
            tracker.observe(slope, {"m": m, "k": k, "check": "derivative", "p": str(midpoint)})
        else:
            tracker.count()
    return tracker


def _monotone_replay(witness: Witness, config: SweepConfig) -> Margin:
    m, k = int(witness["m"]), int(witness["k"])
    p = Fraction(str(witness["p"]))
    if witness.get("check") == "derivative":
        return eb.mean_tail_derivative(BinomialParams(m=m, p=p))
    step = int(witness["step"])
    samples = _interval_samples(m, k, config.grid_points_per_interval)
    previous = eb.grid_upper_tail(m, k) if step == 1 else eb.upper_tail_value(m, samples[step - 2], k + 1)
    return eb.upper_tail_value(m, p, k + 1) - previous


# -- COR1_REDUCTION -------------------------------------------------------

def _reduction_cell(m: int, config: SweepConfig) -> MarginTracker:
    tracker = MarginTracker(strict=False)
    _, worst_cdf = eb.worst_grid_cdf(m)
    lower = 1 - worst_cdf
    min_limit = min(eb.grid_upper_tail(m, k) for k in range(1, m))
    if min_limit != lower:
        tracker.observe(-abs(min_limit - lower), {"m": m, "check": "min-equals-one-minus-max"})
    floor_p = Fraction(1, m)
    for p in _p_grid(config.p_denominator_limit):
        if p <= floor_p or p >= 1:
            continue
        f_value = eb.upper_tail_value(m, p, eb.mean_threshold(m, p))
        tracker.observe(f_value - lower, {"m": m, "p": str(p)})
    return tracker


def _reduction_replay(witness: Witness, config: SweepConfig) -> Margin:
    m = int(witness["m"])
    _, worst_cdf = eb.worst_grid_cdf(m)
    if witness.get("check"):
        return -abs(min(eb.grid_upper_tail(m, k) for k in range(1, m)) - (1 - worst_cdf))
    params = BinomialParams(m=m, p=str(witness["p"]))
    return eb.tail_at_or_above_mean(params).value - (1 - worst_cdf)


# -- LEMMA2_DOMINATION ----------------------------------------------------

def _domination_margin(m: int, k: int) -> float:
    return float(Fraction(bc.lemma2_bound(m, k)) - eb.grid_cdf(m, k))


def _domination_cell(m: int, config: SweepConfig) -> MarginTracker:
    tracker = MarginTracker(strict=False)
    for k in range(1, m):
        tracker.observe(_domination_margin(m, k), {"m": m, "k": k})
    return tracker


def _domination_replay(witness: Witness, config: SweepConfig) -> Margin:
    return _domination_margin(int(witness["m"]), int(witness["k"]))


# -- LEMMA2_RATIO ---------------------------------------------------------

def _ratio_cells(config: SweepConfig) -> List[Tuple[int, int]]:
    return [(lo, min(lo + RATIO_BLOCK - 1, config.max_k)) for lo in range(1, config.max_k + 1, RATIO_BLOCK)]


def _ratio_margin(k: int) -> float:
    if k == 1:
        return RATIO_EQUALITY_SLACK - abs(bc.ratio_alpha_beta(1) - bc.theta())
    return bc.theta() - bc.ratio_alpha_beta(k)


def _ratio_cell(cell: Tuple[int, int], config: SweepConfig) -> MarginTracker:
    lo, hi = cell
    tracker = MarginTracker(strict=False)
    if lo == 1:
        tracker.observe(9.0 - bc.ratio_polynomial_witness(), {"check": "polynomial"}, strict=True)
    for k in range(lo, hi + 1):
        tracker.observe(_ratio_margin(k), {"k": k}, strict=k > 1)
    return tracker


def _ratio_replay(witness: Witness, config: SweepConfig) -> Margin:
    if witness.get("check") == "polynomial":
        return 9.0 - bc.ratio_polynomial_witness()
    return _ratio_margin(int(witness["k"]))


# -- LEMMA3_ENDPOINT ------------------------------------------------------

def _endpoint_cells(config: SweepConfig) -> List[Tuple[str, int]]:
    return [("random", 0), ("analytic", 0)] + [("grid", m) for m in _m_cells(config)]


def _random_betas(config: SweepConfig) -> np.ndarray:
    rng = np.random.default_rng(config.seed)
    # uniform on (0, beta_1]
    return bc.beta(1) * (1.0 - rng.random(config.endpoint_samples))


def _endpoint_gap(beta_value: float, config: SweepConfig) -> float:
    gammas = np.linspace(0.0, 1.0, config.gamma_grid_points)
    values = (beta_value * bc.theta() + gammas / 3.0) / np.sqrt(beta_value + gammas)
    ends = max(bc.phi_ratio(beta_value, 0.0), bc.phi_ratio(beta_value, 1.0))
    return ends + ENDPOINT_SLACK - float(values.max())


def _beta_grid(config: SweepConfig) -> np.ndarray:
    return np.linspace(0.0, bc.beta(2), config.gamma_grid_points)


def _endpoint_cell(cell: Tuple[str, int], config: SweepConfig) -> MarginTracker:
    kind, m = cell
    tracker = MarginTracker(strict=False)
    if kind == "random":
        for beta_value in _random_betas(config):
            b = float(beta_value)
            tracker.observe(_endpoint_gap(b, config), {"check": "endpoint", "beta": repr(b)})
            tracker.observe(bc.phi_ratio(b, 1.0) - bc.phi_ratio(b, 0.0), {"check": "gamma-one", "beta": repr(b)})
    elif kind == "analytic":
        grid = _beta_grid(config)
        for i in range(1, len(grid)):
            lo, hi = float(grid[i - 1]), float(grid[i])
            tracker.observe(bc.g_of_beta(hi) - bc.g_of_beta(lo), {"check": "g-increasing", "index": i}, strict=True)
        for name, margin in _analytic_margins().items():
            tracker.observe(margin, {"check": name}, strict=True)
    else:
        for k in range(1, m):
            tracker.observe(bc.lemma3_argument(k) - bc.lemma2_argument(m, k), {"check": "gamma-max", "m": m, "k": k})
    return tracker


def _analytic_margins() -> Dict[str, float]:
    return {
        "g-beta2": bc.G_BETA2_CEILING - bc.g_of_beta(bc.beta(2)),
        "phi-part": bc.PHI_PART_CEILING - cp.std_normal_cdf(bc.G_BETA2_CEILING),
        "error-part": bc.ERROR_PART_CEILING - bc.error_term_bound(2),
        "beta1-limit": bc.theta_beta_limit() - bc.beta(1),
        "three-theta": 3.0 * bc.theta() - 2.0,
    }


def _endpoint_replay(witness: Witness, config: SweepConfig) -> Margin:
    check = witness["check"]
    if check == "endpoint":
        return _endpoint_gap(float(witness["beta"]), config)
    if check == "gamma-one":
        b = float(witness["beta"])
        return bc.phi_ratio(b, 1.0) - bc.phi_ratio(b, 0.0)
    if check == "g-increasing":
        grid = _beta_grid(config)
        i = int(witness["index"])
        return bc.g_of_beta(float(grid[i])) - bc.g_of_beta(float(grid[i - 1]))
    if check == "gamma-max":
        m, k = int(witness["m"]), int(witness["k"])
        return bc.lemma3_argument(k) - bc.lemma2_argument(m, k)
    return _analytic_margins()[str(check)]


# -- COR2_CONSTANT --------------------------------------------------------

def _constant_cell(m: int, config: SweepConfig) -> MarginTracker:
    tracker = MarginTracker(strict=False)
    for k in range(2, m):
        tracker.observe(bc.COROLLARY2_BOUND - eb.grid_cdf(m, k), {"m": m, "k": k})
    return tracker


def _constant_replay(witness: Witness, config: SweepConfig) -> Margin:
    return bc.COROLLARY2_BOUND - eb.grid_cdf(int(witness["m"]), int(witness["k"]))


# -- LEMMA4_RHO -----------------------------------------------------------

def _rho_cells(config: SweepConfig) -> List[Tuple[str, int]]:
    if config.max_m < 2:
        return []
    return [("exact", m) for m in _m_cells(config)] + [("derivative", 0)]


def _derivative_points(config: SweepConfig) -> np.ndarray:
    rng = np.random.default_rng(config.seed)
    lo, hi = DERIVATIVE_RANGE
    return np.sort(rng.uniform(lo, hi, config.derivative_samples))


def _derivative_agreement(x: float) -> float:
    analytic = bc.rho_prime(x)
    numeric = bc.rho_prime_finite_difference(x)
    return DERIVATIVE_REL_TOL - abs(analytic - numeric) / abs(numeric)


def _rho_cell(cell: Tuple[str, int], config: SweepConfig) -> MarginTracker:
    kind, m = cell
    tracker = MarginTracker(strict=False)
    if kind == "exact":
        value = bc.rho(m)
        margin = bc.LEMMA4_BOUND - value
        tracker.observe(margin, {"m": m})
        if margin == 0:
            tracker.note(f"boundary m={m}: rho(m) = 3/4 (non-strict equality)")
        if value != eb.grid_cdf(m, 1):
            tracker.observe(-abs(value - eb.grid_cdf(m, 1)), {"m": m, "check": "grid-cdf"})
        tracker.observe(bc.rho_series_bound(m) - 2, {"m": m, "check": "series"})
        if m < config.max_m:
            tracker.observe(value - bc.rho(m + 1), {"m": m, "check": "decreasing"}, strict=True)
    else:
        for x in _derivative_points(config):
            x = float(x)
            tracker.observe(-bc.rho_prime(x), {"check": "rho-prime", "x": repr(x)})
            tracker.observe(_derivative_agreement(x), {"check": "finite-difference", "x": repr(x)})
    return tracker


def _rho_replay(witness: Witness, config: SweepConfig) -> Margin:
    check = witness.get("check")
    if check == "rho-prime":
        return -bc.rho_prime(float(witness["x"]))
    if check == "finite-difference":
        return _derivative_agreement(float(witness["x"]))
    m = int(witness["m"])
    if check == "grid-cdf":
        return -abs(bc.rho(m) - eb.grid_cdf(m, 1))
    if check == "series":
        return bc.rho_series_bound(m) - 2
    if check == "decreasing":
        return bc.rho(m) - bc.rho(m + 1)
    return bc.LEMMA4_BOUND - bc.rho(m)


# -- CAMP_PAULSON_ERR -----------------------------------------------------

def _envelope_margin(approx: ApproxCdfResult, exact_cdf: Fraction) -> float:
    deviation = abs(Fraction(approx.estimate) - exact_cdf)
    return float(Fraction(approx.error_bound) - deviation)


def _envelope_cell(m: int, config: SweepConfig) -> MarginTracker:
    tracker = MarginTracker(strict=False)
    for p in CP_P_GRID:
        cdfs = eb.cdf_sequence(m, p)
        on_grid = (m * p).denominator == 1
        previous = None
        for j in range(m):
            witness = {"m": m, "p": str(p), "j": j}
            approx = cp.camp_paulson_cdf(m, p, j)
            margin = _envelope_margin(approx, cdfs[j])
            # every j is binding when p = k/m; off the grid it is only flagged
            if on_grid:
                tracker.observe(margin, witness)
            else:
                tracker.observe_soft(margin, witness)
            if previous is not None:
                tracker.observe_soft(approx.estimate - previous, {**witness, "check": "monotone"})
            previous = approx.estimate
    return tracker


def _envelope_replay(witness: Witness, config: SweepConfig) -> Margin:
    m, p, j = int(witness["m"]), Fraction(str(witness["p"])), int(witness["j"])
    if witness.get("check") == "monotone":
        return cp.camp_paulson_cdf(m, p, j).estimate - cp.camp_paulson_cdf(m, p, j - 1).estimate
    return _envelope_margin(cp.camp_paulson_cdf(m, p, j), eb.cdf(BinomialParams(m=m, p=p), j))


# -- COR3_SYMMETRY --------------------------------------------------------

def _symmetry_cell(m: int, config: SweepConfig) -> MarginTracker:
    tracker = MarginTracker(strict=True)
    ceiling_p = 1 - Fraction(1, m)
    for p in _p_grid(config.p_denominator_limit):
        g_value = eb.lower_tail_value(m, p, math.floor(m * p))
        q = 1 - p
        mirrored = eb.upper_tail_value(m, q, eb.mean_threshold(m, q))
        witness = {"m": m, "p": str(p)}
        if g_value != mirrored:
            tracker.observe(-abs(g_value - mirrored), {**witness, "check": "mirror"})
        elif p < ceiling_p:
            tracker.observe(g_value - bc.THEOREM_BOUND, witness)
        else:
            tracker.count()
    return tracker


def _symmetry_replay(witness: Witness, config: SweepConfig) -> Margin:
    m, p = int(witness["m"]), str(witness["p"])
    if witness.get("check") == "mirror":
        params = BinomialParams(m=m, p=p)
        g_value = eb.tail_at_or_below_mean(params).value
        return -abs(g_value - eb.tail_at_or_above_mean(params.complement()).value)
    return bc.corollary3_margin(m, p).margin


# -- registry -------------------------------------------------------------

@dataclass(frozen=True)
class Claim:
    claim_id: ClaimId
    strict: bool
    cells: Callable[[SweepConfig], Iterable[Any]]
    check_cell: Callable[[Any, SweepConfig], MarginTracker]
    replay: Callable[[Witness, SweepConfig], Margin]


REGISTRY: Dict[ClaimId, Claim] = {
    claim.claim_id: claim
    for claim in (
        Claim(ClaimId.LEMMA1_MONOTONE, True, _monotone_cells, _monotone_cell, _monotone_replay),
        Claim(ClaimId.LEMMA1_GRID_LB, True, _m_cells, _grid_lb_cell, _grid_lb_replay),
        Claim(ClaimId.COR1_REDUCTION, False, _m_cells, _reduction_cell, _reduction_replay),
        Claim(ClaimId.LEMMA2_DOMINATION, False, _m_cells, _domination_cell, _domination_replay),
        Claim(ClaimId.LEMMA2_RATIO, False, _ratio_cells, _ratio_cell, _ratio_replay),
        Claim(ClaimId.LEMMA3_ENDPOINT, False, _endpoint_cells, _endpoint_cell, _endpoint_replay),
        Claim(ClaimId.COR2_CONSTANT, False, _m_cells, _constant_cell, _constant_replay),
        Claim(ClaimId.LEMMA4_RHO, False, _rho_cells, _rho_cell, _rho_replay),
        Claim(ClaimId.CAMP_PAULSON_ERR, False, _m_cells, _envelope_cell, _envelope_replay),
        Claim(ClaimId.THEOREM_MAIN, True, _m_cells, _theorem_cell, _theorem_replay),
        Claim(ClaimId.COR3_SYMMETRY, True, _m_cells, _symmetry_cell, _symmetry_replay),
    )
}


def get_claim(claim_id: Union[ClaimId, str]) -> Claim:
    try:
        return REGISTRY[ClaimId(claim_id)]
    except (ValueError, KeyError) as exc:
        raise UnknownClaimError(f"unknown claim id {claim_id!r}") from exc

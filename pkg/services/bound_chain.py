"""Constants and bound functions of the lower-bound proof chain.

Reduction: by monotonicity of F(m, .) between grid points, it suffices to
bound the grid CDF P[X <= k] under B(m, k/m) by 3/4 for 1 <= k <= m-1.
The k >= 2 cases go through the Camp-Paulson envelope (``lemma2_bound``),
the gamma endpoint argument (``lemma3_bound``) and the monotone g(beta),
ending at the constant 0.7152. The k = 1 case is ``rho``.
"""

import logging
import math
from fractions import Fraction
from typing import Union

import mpmath

from core.errors import DomainError, PreconditionError
from models.bounds import BoundConstants, Corollary2Certificate, MarginResult
from models.probability import BinomialParams, ExactProbability, TrialCount
from services.camp_paulson import ERROR_CONSTANT, std_normal_cdf
from services.exact_binomial import tail_at_or_above_mean, tail_at_or_below_mean

log = logging.getLogger(__name__)

CBRT2 = 2.0 ** (1.0 / 3.0)
THEOREM_BOUND = Fraction(1, 4)
LEMMA4_BOUND = Fraction(3, 4)
COROLLARY2_BOUND = Fraction("0.7152")
PHI_PART_CEILING = 0.7053
ERROR_PART_CEILING = 0.0099
G_BETA2_CEILING = 0.53968


def theta() -> float:
    """17 / (3 * 2^(1/3)) - 3 * 2^(1/3), about 0.7178732."""
    return 17.0 / (3.0 * CBRT2) - 3.0 * CBRT2


def _check_k(k: int, what: str) -> None:
    if k < 1:
        raise DomainError(f"{what}: k={k} violates k >= 1")


def _lambda_minus_one(k: int) -> float:
    # (1 + 1/k)^(1/3) - 1 without cancellation for large k
    return math.expm1(math.log1p(1.0 / k) / 3.0)


def beta(k: int) -> float:
    """(1/(1+k)) (1 + 1/k)^(2/3)."""
    _check_k(k, "beta")
    lam = 1.0 + _lambda_minus_one(k)
    return lam * lam / (1 + k)


def gamma(m: TrialCount, k: int) -> float:
    """1/(m - k) for 1 <= k <= m-1."""
    _check_k(k, "gamma")
    if k > m - 1:
        raise DomainError(f"gamma: k={k} violates k <= m-1 for m={m}")
    return 1.0 / (m - k)


def alpha(k: int) -> float:
    """(1 + 1/k)^(1/3) (3 - 1/(3(1+k))) - 3."""
    _check_k(k, "alpha")
    t = _lambda_minus_one(k)
    return 3.0 * t - (1.0 + t) / (3.0 * (1 + k))


def bound_constants(m: TrialCount, k: int) -> BoundConstants:
    return BoundConstants(theta=theta(), alpha_k=alpha(k), beta_k=beta(k), gamma_mk=gamma(m, k))


def ratio_alpha_beta(k: int) -> float:
    """alpha_k / beta_k; increasing in lambda = (1+1/k)^(1/3), so maximal (= theta) at k = 1."""
    _check_k(k, "ratio_alpha_beta")
    return alpha(k) / beta(k)


def ratio_from_lambda(lam: float) -> float:
    """3 lam / (1 + lam + lam^2) - 1 / (3 lam)."""
    return 3.0 * lam / (1.0 + lam + lam * lam) - 1.0 / (3.0 * lam)


def ratio_derivative_numerator(lam: float) -> float:
    """Numerator of d(alpha/beta)/d(lambda); its sign is the derivative's sign."""
    t = lam - 1.0
    return -8.0 * t**4 - 30.0 * t**3 - 30.0 * t**2 + 9.0


def ratio_polynomial_witness() -> float:
    """8t^4 + 30t^3 + 30t^2 at t = 2^(1/3) - 1, about 2.59 (< 9)."""
    return 9.0 - ratio_derivative_numerator(CBRT2)


def error_term_bound(m: TrialCount) -> float:
    """0.007 / sqrt(1 - 1/m), the worst Camp-Paulson envelope over k at p = k/m."""
    if m < 2:
        raise DomainError(f"error_term_bound: m={m} violates m >= 2")
    return ERROR_CONSTANT / math.sqrt(1.0 - 1.0 / m)


def phi_ratio(beta_value: float, gamma_value: float) -> float:
    """phi(gamma) = (beta theta + gamma/3) / sqrt(beta + gamma)."""
    if not beta_value > 0:
        raise DomainError(f"phi_ratio: beta={beta_value!r} violates beta > 0")
    if not 0.0 <= gamma_value <= 1.0:
        raise DomainError(f"phi_ratio: gamma={gamma_value!r} outside [0, 1]")
    return (beta_value * theta() + gamma_value / 3.0) / math.sqrt(beta_value + gamma_value)


def phi_ratio_derivative(beta_value: float, gamma_value: float) -> float:
    """(gamma + beta (2 - 3 theta)) / (6 (beta + gamma)^(3/2))."""
    if not beta_value > 0:
        raise DomainError(f"phi_ratio_derivative: beta={beta_value!r} violates beta > 0")
    return (gamma_value + beta_value * (2.0 - 3.0 * theta())) / (6.0 * (beta_value + gamma_value) ** 1.5)


def phi_turning_point(beta_value: float) -> float:
    """Interior minimum of phi: gamma = beta (3 theta - 2)."""
    if not beta_value > 0:
        raise DomainError(f"phi_turning_point: beta={beta_value!r} violates beta > 0")
    return beta_value * (3.0 * theta() - 2.0)


def theta_beta_limit() -> float:
    """1 / (theta (9 theta - 6)), about 3.022.

    For beta below this value phi(0) <= phi(1), so phi peaks at gamma = 1.
    """
    t = theta()
    return 1.0 / (t * (9.0 * t - 6.0))


def lemma2_argument(m: TrialCount, k: int) -> float:
    if m < 2:
        raise DomainError(f"lemma2: m={m} violates m >= 2")
    return phi_ratio(beta(k), gamma(m, k))


def lemma2_bound(m: TrialCount, k: int) -> float:
    """Phi[(beta_k theta + gamma_mk/3) / sqrt(beta_k + gamma_mk)] + 0.007 / sqrt(1 - 1/m)."""
    return std_normal_cdf(lemma2_argument(m, k)) + error_term_bound(m)


def lemma3_argument(k: int) -> float:
    return phi_ratio(beta(k), 1.0)


def lemma3_bound(k: int) -> float:
    """Phi[(beta_k theta + 1/3) / sqrt(beta_k + 1)], dominating lemma2's Phi term."""
    return std_normal_cdf(lemma3_argument(k))


def g_of_beta(beta_value: float) -> float:
    """g(beta) = (beta theta + 1/3) / sqrt(beta + 1), increasing for beta >= 0."""
    if beta_value < 0:
        raise DomainError(f"g_of_beta: beta={beta_value!r} violates beta >= 0")
    return (beta_value * theta() + 1.0 / 3.0) / math.sqrt(beta_value + 1.0)


def g_derivative(beta_value: float) -> float:
    if beta_value < 0:
        raise DomainError(f"g_derivative: beta={beta_value!r} violates beta >= 0")
    return (3.0 * (beta_value + 2.0) * theta() - 1.0) / (6.0 * (beta_value + 1.0) ** 1.5)


def corollary2_upper(m: TrialCount, k: int) -> Corollary2Certificate:
    """The 0.7152 bound on grid_cdf(m, k) for k >= 2, split into its two parts."""
    if k < 2:
        raise DomainError(f"corollary2_upper: k={k} violates k >= 2; k = 1 is bounded by rho(m)")
    if m < 2 or k > m - 1:
        raise DomainError(f"corollary2_upper: k={k} violates k <= m-1 for m={m}")
    phi_part = lemma3_bound(k)
    error_part = error_term_bound(m)
    return Corollary2Certificate(
        m=m,
        k=k,
        phi_part=phi_part,
        error_part=error_part,
        bound=float(COROLLARY2_BOUND),
        phi_within=phi_part <= PHI_PART_CEILING,
        error_within=error_part <= ERROR_PART_CEILING,
    )


def rho(m: TrialCount) -> ExactProbability:
    """(1 - 1/m)^m + (1 - 1/m)^(m-1) = grid_cdf(m, 1)."""
    if m < 2:
        raise DomainError(f"rho: m={m} violates m >= 2")
    q = 1 - Fraction(1, m)
    return q**m + q ** (m - 1)


def rho_real(m: float) -> float:
    """rho extended to real m >= 2."""
    if m < 2:
        raise DomainError(f"rho_real: m={m!r} violates m >= 2")
    log_q = math.log1p(-1.0 / m)
    return math.exp(m * log_q) + math.exp((m - 1.0) * log_q)


def rho_prime(m: float) -> float:
    """(m-1)^(m-1) m^(-m) (2 + (2m-1) log(1 - 1/m)); never positive for m >= 2."""
    if m < 2:
        raise DomainError(f"rho_prime: m={m!r} violates m >= 2")
    scale = math.exp((m - 1.0) * math.log(m - 1.0) - m * math.log(m))
    return scale * (2.0 + (2.0 * m - 1.0) * math.log1p(-1.0 / m))


def rho_prime_finite_difference(m: float, step: str = "1e-12", dps: int = 50) -> float:
    """Central difference of the real extension of rho at ``dps`` digits."""
    if m < 2:
        raise DomainError(f"rho_prime_finite_difference: m={m!r} violates m >= 2")
    with mpmath.workdps(dps):
        x = mpmath.mpf(m)
        h = mpmath.mpf(step)

        def rho_mp(t):
            q = 1 - 1 / t
            return q**t + q ** (t - 1)

        return float((rho_mp(x + h) - rho_mp(x - h)) / (2 * h))


def rho_series_bound(m: TrialCount) -> Fraction:
    """(2m - 1)(1/m + 1/(2m^2) + 1/(3m^3)) = 2 + 1/(6m^2) - 1/(3m^3) >= 2."""
    if m < 2:
        raise DomainError(f"rho_series_bound: m={m} violates m >= 2")
    m_ = Fraction(m)
    return (2 * m_ - 1) * (1 / m_ + 1 / (2 * m_**2) + 1 / (3 * m_**3))


def combined_bound(m: TrialCount) -> Fraction:
    """max{rho(m), 0.7152}; 1 minus it is the lower bound on F(m, p) for p > 1/m."""
    return max(rho(m), COROLLARY2_BOUND)


def theorem_margin(m: TrialCount, p: Union[ExactProbability, str]) -> MarginResult:
    """F(m, p) - 1/4, which is positive whenever p > 1/m."""
    params = BinomialParams(m=m, p=p)
    if m < 2 or params.p <= Fraction(1, m):
        raise PreconditionError(
            f"theorem requires m >= 2 and p > 1/m; got m={m}, p={params.p}"
        )
    margin = tail_at_or_above_mean(params).value - THEOREM_BOUND
    return MarginResult(holds=margin > 0, margin=margin, witness={"m": m, "p": str(params.p)})


def corollary3_margin(m: TrialCount, p: Union[ExactProbability, str]) -> MarginResult:
    """G(m, p) - 1/4 for p < 1 - 1/m, using G(m, p) = F(m, 1 - p)."""
    params = BinomialParams(m=m, p=p)
    if m < 2 or params.p >= 1 - Fraction(1, m):
        raise PreconditionError(
            f"corollary requires m >= 2 and p < 1 - 1/m; got m={m}, p={params.p}"
        )
    g_value = tail_at_or_below_mean(params).value
    mirrored = tail_at_or_above_mean(params.complement()).value
    margin = g_value - THEOREM_BOUND
    if g_value != mirrored:
        log.error("G(%s, %s) != F(%s, 1 - p)", m, params.p, m)
    return MarginResult(
        holds=margin > 0 and g_value == mirrored,
        margin=margin,
        witness={"m": m, "p": str(params.p)},
    )

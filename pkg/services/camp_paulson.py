"""Standard normal CDF and the Camp-Paulson approximation to the binomial CDF.

All arithmetic is IEEE double precision. Exact inputs are converted to float
once, in ``_as_float``; nothing upstream of that point is rounded.

Phi is evaluated through the complementary error function of the C library
(``math.erfc``), which is accurate to a few ulp over the whole real line; the
absolute error of ``std_normal_cdf`` stays below 1e-14 for |x| <= 10.
"""

import logging
import math
from fractions import Fraction

from core.errors import DomainError
from models.bounds import ApproxCdfResult, CampPaulsonTerms
from models.probability import ExactProbability, TrialCount

log = logging.getLogger(__name__)

ERROR_CONSTANT = 0.007
_SQRT2 = math.sqrt(2.0)


def _as_float(p: ExactProbability) -> float:
    return float(Fraction(p))


def _check_open_probability(p: ExactProbability, what: str) -> None:
    if not 0 < p < 1:
        raise DomainError(f"{what}: p={p} must satisfy 0 < p < 1")


def std_normal_cdf(x: float) -> float:
    """Phi(x), the standard normal CDF."""
    if not math.isfinite(x):
        raise DomainError(f"std_normal_cdf: x={x!r} is not finite")
    # erfc keeps full relative accuracy in the lower tail
    return 0.5 * math.erfc(-x / _SQRT2)


def camp_paulson_terms(m: TrialCount, p: ExactProbability, j: int) -> CampPaulsonTerms:
    _check_open_probability(p, "camp_paulson_terms")
    if j == m:
        raise DomainError("camp_paulson_terms: j = m, a diverges; CDF is exactly 1")
    if not 0 <= j < m:
        raise DomainError(f"camp_paulson_terms: j={j} outside [0, m-1] for m={m}")
    # r is formed exactly, then rounded once
    r = _as_float(Fraction((j + 1) * (1 - p), m * p - j * p))
    a = 1.0 / (9 * m - 9 * j)
    b = 1.0 / (9 * j + 9)
    cbrt_r = r ** (1.0 / 3.0)
    return CampPaulsonTerms(
        a=a,
        b=b,
        r=r,
        c=(1.0 - b) * cbrt_r,
        mu=1.0 - a,
        sigma=math.sqrt(b * cbrt_r * cbrt_r + a),
    )


def camp_paulson_error_bound(m: TrialCount, p: ExactProbability) -> float:
    """0.007 / sqrt(m p (1 - p))."""
    _check_open_probability(p, "camp_paulson_error_bound")
    return ERROR_CONSTANT / math.sqrt(_as_float(m * p * (1 - p)))


def camp_paulson_cdf(
    m: TrialCount, p: ExactProbability, j: int, full_support_exact: bool = False
) -> ApproxCdfResult:
    """Approximate P[X <= j] with its absolute error envelope.

    With ``full_support_exact`` the call accepts j = m and returns the exact
    value 1 with a zero envelope.
    """
    if full_support_exact and j == m:
        return ApproxCdfResult(estimate=1.0, error_bound=0.0)
    terms = camp_paulson_terms(m, p, j)
    raw = std_normal_cdf(terms.z)
    estimate = min(1.0, max(0.0, raw))
    if estimate != raw:
        log.debug("clamped Camp-Paulson estimate %r at m=%s p=%s j=%s", raw, m, p, j)
    return ApproxCdfResult(estimate=estimate, error_bound=camp_paulson_error_bound(m, p))

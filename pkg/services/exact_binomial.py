"""Exact rational binomial probabilities.

Every value here is a ``Fraction``; nothing goes through binary floating
point. The other services use this module as their ground-truth oracle.
"""

import itertools
import math
from fractions import Fraction
from typing import List, Tuple

from core.errors import DomainError
from models.probability import BinomialParams, ExactProbability, TailValue, TrialCount

BRUTE_FORCE_MAX_M = 16


def _weighted_upper_sum(m: int, a: int, c: int, lo: int) -> int:
    """Integer sum of C(m,j) a^j c^(m-j) for j = lo..m.

    Horner form in c with a running power of a; binomial coefficients follow
    the multiplicative recurrence C(m,j+1) = C(m,j)(m-j)/(j+1).
    """
    lo = max(lo, 0)
    if lo > m:
        return 0
    coef = math.comb(m, lo)
    a_pow = 1
    acc = 0
    for j in range(lo, m + 1):
        acc = acc * c + coef * a_pow
        a_pow *= a
        coef = coef * (m - j) // (j + 1)
    return acc * a**lo


def upper_tail_value(m: int, p: Fraction, k: int) -> Fraction:
    """P[X >= k] for X ~ B(m, p), without argument validation."""
    a, b = p.numerator, p.denominator
    return Fraction(_weighted_upper_sum(m, a, b - a, k), b**m)


def lower_tail_value(m: int, p: Fraction, k: int) -> Fraction:
    """P[X <= k] for X ~ B(m, p), without argument validation."""
    if k < 0:
        return Fraction(0)
    a, b = p.numerator, p.denominator
    # sum_{j<=k} C(m,j) a^j c^(m-j) == sum_{i>=m-k} C(m,i) c^i a^(m-i)
    return Fraction(_weighted_upper_sum(m, b - a, a, m - k), b**m)


def mean_threshold(m: int, p: Fraction) -> int:
    """ceil(m p) in exact arithmetic."""
    return math.ceil(m * p)


def _check_index(k: int, lo: int, hi: int, what: str) -> None:
    if k < lo:
        raise DomainError(f"{what}: k={k} violates lower bound k >= {lo}")
    if k > hi:
        raise DomainError(f"{what}: k={k} violates upper bound k <= {hi}")


def pmf(params: BinomialParams, k: int) -> ExactProbability:
    """P[X = k] = C(m,k) p^k (1-p)^(m-k)."""
    _check_index(k, 0, params.m, "pmf")
    m, p = params.m, params.p
    return math.comb(m, k) * p**k * (1 - p) ** (m - k)


def cdf(params: BinomialParams, k: int) -> ExactProbability:
    """P[X <= k]."""
    _check_index(k, 0, params.m, "cdf")
    return lower_tail_value(params.m, params.p, k)


def upper_tail(params: BinomialParams, k: int) -> ExactProbability:
    """P[X >= k]; k = m + 1 gives 0."""
    _check_index(k, 0, params.m + 1, "upper_tail")
    return upper_tail_value(params.m, params.p, k)


def tail_at_or_above_mean(params: BinomialParams) -> TailValue:
    """F(m, p) = P[X >= m p], summed from ceil(m p)."""
    j = mean_threshold(params.m, params.p)
    return TailValue(value=upper_tail_value(params.m, params.p, j), threshold_index=j)


def tail_at_or_below_mean(params: BinomialParams) -> TailValue:
    """G(m, p) = P[X <= m p], summed up to floor(m p)."""
    j = math.floor(params.m * params.p)
    return TailValue(value=lower_tail_value(params.m, params.p, j), threshold_index=j)


def grid_upper_tail(m: TrialCount, k: int) -> ExactProbability:
    """P[X >= k+1] under B(m, k/m): the left limit of F(m, .) at k/m."""
    _check_index(k, 1, m - 1, "grid_upper_tail")
    return upper_tail_value(m, Fraction(k, m), k + 1)


def grid_cdf(m: TrialCount, k: int) -> ExactProbability:
    """P[X <= k] under B(m, k/m)."""
    _check_index(k, 1, m - 1, "grid_cdf")
    return lower_tail_value(m, Fraction(k, m), k)


def worst_grid_cdf(m: TrialCount) -> Tuple[int, ExactProbability]:
    """(k*, max_k grid_cdf(m, k)) over k = 1..m-1.

    F(m, p) >= 1 - max_k grid_cdf(m, k) for every p in (1/m, 1).
    """
    if m < 2:
        raise DomainError(f"worst_grid_cdf: m={m} violates m >= 2")
    best_k, best = 1, grid_cdf(m, 1)
    for k in range(2, m):
        value = grid_cdf(m, k)
        if value > best:
            best_k, best = k, value
    return best_k, best


def interval_index(m: TrialCount, p: Fraction) -> int:
    """The k with p in (k/m, (k+1)/m]; requires 0 < p <= 1."""
    if not 0 < p <= 1:
        raise DomainError(f"interval_index: p={p} outside (0, 1]")
    return mean_threshold(m, p) - 1


def mean_tail_derivative(params: BinomialParams) -> Fraction:
    """dF/dp inside the interval containing p, for 0 < p < 1.

    sum_{j=ceil(mp)}^{m} C(m,j) (1-p)^(m-j-1) p^(j-1) (j - m p)
    """
    m, p = params.m, params.p
    if not 0 < p < 1:
        raise DomainError(f"mean_tail_derivative: p={p} outside (0, 1)")
    q = 1 - p
    total = Fraction(0)
    for j in range(mean_threshold(m, p), m + 1):
        total += math.comb(m, j) * q ** (m - j - 1) * p ** (j - 1) * (j - m * p)
    return total


def brute_force_tail(params: BinomialParams) -> ExactProbability:
    """F(m, p) by enumerating all 2^m outcome sequences."""
    m, p = params.m, params.p
    if m > BRUTE_FORCE_MAX_M:
        raise DomainError(f"brute_force_tail: m={m} violates m <= {BRUTE_FORCE_MAX_M}")
    threshold = m * p
    q = 1 - p
    total = Fraction(0)
    for outcome in itertools.product((0, 1), repeat=m):
        s = sum(outcome)
        if s >= threshold:
            total += p**s * q ** (m - s)
    return total


def cdf_sequence(m: TrialCount, p: ExactProbability) -> List[ExactProbability]:
    """[P[X <= 0], ..., P[X <= m]] from one pass of cumulative integer sums."""
    a, b = p.numerator, p.denominator
    c = b - a
    denominator = b**m
    coef, running = 1, 0
    out: List[Fraction] = []
    for j in range(m + 1):
        running += coef * a**j * c ** (m - j)
        out.append(Fraction(running, denominator))
        coef = coef * (m - j) // (j + 1)
    return out

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from core.errors import DomainError
from models.probability import BinomialParams
from services import bound_chain as bc
from services import exact_binomial as eb

probabilities = st.fractions(min_value=0, max_value=1, max_denominator=60)
trials = st.integers(min_value=1, max_value=40)


def params(m, p):
    return BinomialParams(m=m, p=p)


@pytest.mark.parametrize(
    "m, p, k, expected",
    [(2, "1/2", 1, Fraction(1, 2)), (3, "1/3", 0, Fraction(8, 27)), (5, "0", 0, Fraction(1))],
)
def test_pmf(m, p, k, expected):
    assert eb.pmf(params(m, p), k) == expected


@pytest.mark.parametrize(
    "m, p, k, expected",
    [(2, "1/2", 1, Fraction(3, 4)), (4, "1", 3, Fraction(0)), (2, "1/2", 2, Fraction(1))],
)
def test_cdf(m, p, k, expected):
    assert eb.cdf(params(m, p), k) == expected


@pytest.mark.parametrize(
    "m, p, k, expected",
    [(3, "1/2", 2, Fraction(1, 2)), (2, "3/5", 2, Fraction(9, 25)), (4, "1/4", 0, Fraction(1))],
)
def test_upper_tail(m, p, k, expected):
    assert eb.upper_tail(params(m, p), k) == expected


def test_upper_tail_past_support_is_zero():
    assert eb.upper_tail(params(4, "1/3"), 5) == 0


@pytest.mark.parametrize(
    "call",
    [
        lambda: eb.pmf(params(3, "1/2"), -1),
        lambda: eb.pmf(params(3, "1/2"), 4),
        lambda: eb.cdf(params(3, "1/2"), 4),
        lambda: eb.upper_tail(params(3, "1/2"), 5),
        lambda: eb.upper_tail(params(3, "1/2"), -1),
        lambda: eb.grid_cdf(4, 0),
        lambda: eb.grid_cdf(4, 4),
    ],
)
def test_out_of_range_index(call):
    with pytest.raises(DomainError, match="violates"):
        call()


def test_tail_at_or_above_mean():
    value = eb.tail_at_or_above_mean(params(2, "3/5"))
    assert (value.value, value.threshold_index) == (Fraction(9, 25), 2)
    value = eb.tail_at_or_above_mean(params(3, "1/2"))
    assert (value.value, value.threshold_index) == (Fraction(1, 2), 2)


def test_integer_mean_is_included():
    p = params(5, "2/5")
    value = eb.tail_at_or_above_mean(p)
    assert value.threshold_index == 2
    assert value.value == eb.upper_tail(p, 2)


def test_tail_at_or_below_mean():
    assert eb.tail_at_or_below_mean(params(3, "1/2")).value == Fraction(1, 2)
    assert eb.tail_at_or_below_mean(params(2, "2/5")).value == Fraction(9, 25)
    assert eb.tail_at_or_below_mean(params(4, "1")).value == 1


@pytest.mark.parametrize("eps", [Fraction(1, 10**3), Fraction(1, 10**6), Fraction(1, 10**9)])
def test_tightness_at_two_trials(eps):
    f_value = eb.tail_at_or_above_mean(params(2, Fraction(1, 2) + eps)).value
    assert f_value - Fraction(1, 4) == eps + eps**2


@given(trials, probabilities)
def test_pmf_sums_to_one(m, p):
    bp = params(m, p)
    assert sum(eb.pmf(bp, k) for k in range(m + 1)) == 1


@given(trials, probabilities, st.data())
def test_cdf_and_upper_tail_are_complementary(m, p, data):
    k = data.draw(st.integers(min_value=0, max_value=m))
    bp = params(m, p)
    assert eb.cdf(bp, k) + eb.upper_tail(bp, k + 1) == 1


@given(trials, probabilities)
def test_mean_tail_threshold_is_ceiling(m, p):
    bp = params(m, p)
    value = eb.tail_at_or_above_mean(bp)
    assert value.threshold_index >= m * p > value.threshold_index - 1
    assert value.value == eb.upper_tail(bp, value.threshold_index)


@given(trials, probabilities)
def test_below_mean_mirrors_above_mean(m, p):
    bp = params(m, p)
    assert eb.tail_at_or_below_mean(bp).value == eb.tail_at_or_above_mean(bp.complement()).value


@settings(max_examples=40)
@given(st.integers(min_value=1, max_value=10), probabilities)
def test_agrees_with_enumeration(m, p):
    bp = params(m, p)
    assert eb.brute_force_tail(bp) == eb.tail_at_or_above_mean(bp).value


def test_brute_force_refuses_large_m():
    with pytest.raises(DomainError):
        eb.brute_force_tail(params(17, "1/2"))


@pytest.mark.parametrize("m, k, expected", [(2, 1, Fraction(1, 4)), (3, 1, Fraction(7, 27)), (4, 3, Fraction(81, 256))])
def test_grid_upper_tail(m, k, expected):
    assert eb.grid_upper_tail(m, k) == expected


@pytest.mark.parametrize("m, k, expected", [(2, 1, Fraction(3, 4)), (3, 1, Fraction(20, 27)), (4, 2, Fraction(11, 16))])
def test_grid_cdf(m, k, expected):
    assert eb.grid_cdf(m, k) == expected


def test_grid_values_complement():
    for m in range(2, 15):
        for k in range(1, m):
            assert eb.grid_cdf(m, k) + eb.grid_upper_tail(m, k) == 1


def test_grid_cdf_at_one_is_rho():
    for m in range(2, 30):
        assert eb.grid_cdf(m, 1) == bc.rho(m)


def test_worst_grid_cdf():
    assert eb.worst_grid_cdf(2) == (1, Fraction(3, 4))
    for m in range(3, 20):
        k, value = eb.worst_grid_cdf(m)
        assert value == max(eb.grid_cdf(m, j) for j in range(1, m))
        assert value == eb.grid_cdf(m, k)
    with pytest.raises(DomainError):
        eb.worst_grid_cdf(1)


@pytest.mark.parametrize("m, p, k", [(4, Fraction(1, 2), 1), (4, Fraction(3, 5), 2), (4, Fraction(1), 3), (5, Fraction(1, 100), 0)])
def test_interval_index(m, p, k):
    assert eb.interval_index(m, p) == k
    assert Fraction(k, m) < p <= Fraction(k + 1, m)


def test_mean_tail_derivative_matches_closed_form():
    # F(2, p) = p^2 on (1/2, 1]
    assert eb.mean_tail_derivative(params(2, "3/5")) == Fraction(6, 5)
    with pytest.raises(DomainError):
        eb.mean_tail_derivative(params(2, "1"))


@given(st.integers(min_value=2, max_value=25), st.fractions(min_value=0, max_value=1, max_denominator=60))
def test_mean_tail_derivative_positive(m, p):
    if 0 < p < 1:
        assert eb.mean_tail_derivative(params(m, p)) > 0


@given(trials, probabilities)
def test_cdf_sequence(m, p):
    bp = params(m, p)
    assert eb.cdf_sequence(m, p) == [eb.cdf(bp, j) for j in range(m + 1)]


def test_params_validation():
    with pytest.raises(ValueError):
        params(0, "1/2")
    with pytest.raises(ValueError):
        params(3, "5/4")

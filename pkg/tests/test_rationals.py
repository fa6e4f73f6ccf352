from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from core.errors import DomainError, ParseError
from utils.rationals import farey, format_exact, format_real, parse_probability, parse_rational


@pytest.mark.parametrize(
    "text, expected",
    [("3/5", Fraction(3, 5)), ("0.1", Fraction(1, 10)), (" 7 ", Fraction(7)), ("1e-9", Fraction(1, 10**9))],
)
def test_parse_rational_is_exact(text, expected):
    assert parse_rational(text) == expected


@pytest.mark.parametrize("bad", ["abc", "1/0", "", "3//5"])
def test_parse_rational_rejects_garbage(bad):
    with pytest.raises(ParseError):
        parse_rational(bad)


def test_parse_rational_refuses_floats():
    with pytest.raises(ParseError):
        parse_rational(0.1)


def test_parse_probability_range():
    assert parse_probability("1") == 1
    with pytest.raises(DomainError):
        parse_probability("3/2")
    with pytest.raises(DomainError):
        parse_probability("-1/3")


def test_format_exact():
    assert format_exact(Fraction(9, 25)) == "9/25 (0.36)"
    assert format_exact(Fraction(3, 4)) == "3/4 (0.75)"


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_format_real_round_trips(x):
    assert float(format_real(x)) == x


def test_farey_small():
    assert list(farey(3)) == [Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1)]
    assert len(list(farey(5))) == 11


@given(st.integers(min_value=1, max_value=40))
def test_farey_sorted_and_bounded(n):
    terms = list(farey(n))
    assert terms[0] == 0 and terms[-1] == 1
    assert all(a < b for a, b in zip(terms, terms[1:]))
    assert all(t.denominator <= n for t in terms)


def test_farey_rejects_zero_limit():
    with pytest.raises(DomainError):
        list(farey(0))

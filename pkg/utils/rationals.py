"""Exact parsing and formatting of rationals, plus Farey grids."""

from fractions import Fraction
from typing import Iterator, Union

from core.errors import DomainError, ParseError

RationalLike = Union[str, int, Fraction]


def parse_rational(value: RationalLike) -> Fraction:
    """Parse "a/b", an integer or a decimal string without touching binary floats.

    >>> parse_rational("3/5")
    Fraction(3, 5)
    >>> parse_rational("0.1")
    Fraction(1, 10)
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(f"refusing inexact value {value!r}; pass a string or Fraction")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError, AttributeError) as exc:
        raise ParseError(f"cannot parse {value!r} as an exact rational") from exc


def parse_probability(value: RationalLike) -> Fraction:
    p = parse_rational(value)
    if not 0 <= p <= 1:
        raise DomainError(f"probability {p} outside [0, 1]")
    return p


def format_rational(value: Fraction) -> str:
    return str(value)


def format_real(value: float) -> str:
    """Shortest decimal that round-trips to the same double."""
    return repr(float(value))


def format_exact(value: Fraction) -> str:
    """Reduced fraction followed by its nearest double, e.g. ``9/25 (0.36)``."""
    return f"{format_rational(value)} ({format_real(float(value))})"


def farey(limit: int) -> Iterator[Fraction]:
    """Yield every reduced a/b in [0, 1] with b <= limit, in increasing order."""
    if limit < 1:
        raise DomainError(f"denominator limit {limit} must be >= 1")
    a, b, c, d = 0, 1, 1, limit
    yield Fraction(a, b)
    while c <= limit:
        k = (limit + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
        yield Fraction(a, b)

"""Shared click parameter types and options."""

from fractions import Fraction

import click

from core.errors import ParseError
from models.figure import OutputFormat
from utils.rationals import parse_rational


class RationalParamType(click.ParamType):
    """Exact rational from "a/b", an integer or a decimal string."""

    name = "rational"

    def convert(self, value, param, ctx) -> Fraction:
        if isinstance(value, Fraction):
            return value
        try:
            return parse_rational(str(value))
        except ParseError as exc:
            self.fail(str(exc), param, ctx)


RATIONAL = RationalParamType()


def format_option(default: OutputFormat):
    return click.option(
        "--format",
        "fmt",
        type=click.Choice([f.value for f in OutputFormat], case_sensitive=False),
        default=default.value,
        show_default=True,
        callback=lambda ctx, param, value: OutputFormat(value.upper()),
        help="Output format.",
    )

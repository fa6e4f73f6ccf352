from fractions import Fraction
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator

from utils.rationals import parse_probability

# Number of trials; m >= 1 is enforced where it is used as a model field.
TrialCount = int

# Probabilities are exact rationals in lowest terms (Fraction normalizes).
ExactProbability = Fraction


class BinomialParams(BaseModel):
    """Parameters (m, p) of B(m, p)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    m: TrialCount = Field(..., ge=1)
    p: ExactProbability

    @field_validator("p", mode="before")
    @classmethod
    def _exact_p(cls, v: Any) -> Fraction:
        return parse_probability(v)

    @property
    def mean(self) -> Fraction:
        return self.m * self.p

    @property
    def variance(self) -> Fraction:
        return self.m * self.p * (1 - self.p)

    def complement(self) -> "BinomialParams":
        """B(m, 1 - p), the distribution of m - X."""
        return BinomialParams(m=self.m, p=1 - self.p)


class TailValue(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    value: ExactProbability
    threshold_index: int = Field(..., ge=0)

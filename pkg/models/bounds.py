from typing import Dict, Union
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field

Number = Union[Fraction, float]


class CampPaulsonTerms(BaseModel):
    """Intermediate quantities of the Camp-Paulson transform."""

    model_config = ConfigDict(frozen=True)

    a: float = Field(..., gt=0)
    b: float = Field(..., gt=0)
    r: float = Field(..., gt=0)
    c: float
    mu: float
    sigma: float = Field(..., gt=0)

    @property
    def z(self) -> float:
        return (self.c - self.mu) / self.sigma


class ApproxCdfResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    estimate: float = Field(..., ge=0.0, le=1.0)
    error_bound: float = Field(..., ge=0.0)

    @property
    def lower(self) -> float:
        return self.estimate - self.error_bound

    @property
    def upper(self) -> float:
        return self.estimate + self.error_bound


class BoundConstants(BaseModel):
    model_config = ConfigDict(frozen=True)

    theta: float
    alpha_k: float
    beta_k: float
    gamma_mk: float


class MarginResult(BaseModel):
    """Outcome of a single strict inequality check."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    holds: bool
    margin: Number
    witness: Dict[str, Union[int, str]]


class Corollary2Certificate(BaseModel):
    """Componentwise split of the 0.7152 bound for one (m, k)."""

    model_config = ConfigDict(frozen=True)

    m: int
    k: int
    phi_part: float
    error_part: float
    bound: float
    phi_within: bool
    error_within: bool

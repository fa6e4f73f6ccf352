from enum import Enum
from typing import Dict, List, Union

from pydantic import BaseModel, ConfigDict, Field

from core.config import settings

WitnessValue = Union[int, str]


class ClaimId(str, Enum):
    LEMMA1_MONOTONE = "LEMMA1_MONOTONE"
    LEMMA1_GRID_LB = "LEMMA1_GRID_LB"
    COR1_REDUCTION = "COR1_REDUCTION"
    LEMMA2_DOMINATION = "LEMMA2_DOMINATION"
    LEMMA2_RATIO = "LEMMA2_RATIO"
    LEMMA3_ENDPOINT = "LEMMA3_ENDPOINT"
    COR2_CONSTANT = "COR2_CONSTANT"
    LEMMA4_RHO = "LEMMA4_RHO"
    CAMP_PAULSON_ERR = "CAMP_PAULSON_ERR"
    THEOREM_MAIN = "THEOREM_MAIN"
    COR3_SYMMETRY = "COR3_SYMMETRY"


class SweepConfig(BaseModel):
    """Parameter ranges of a certification sweep; fully determines its reports."""

    model_config = ConfigDict(frozen=True)

    max_m: int = Field(settings.MAX_M, ge=1)
    p_denominator_limit: int = Field(settings.P_DENOMINATOR_LIMIT, ge=1)
    grid_points_per_interval: int = Field(settings.GRID_POINTS_PER_INTERVAL, ge=1)
    seed: int = Field(settings.SEED, ge=1, lt=2**64)
    max_k: int = Field(settings.MAX_K, ge=1)
    endpoint_samples: int = Field(settings.ENDPOINT_SAMPLES, ge=1)
    gamma_grid_points: int = Field(settings.GAMMA_GRID_POINTS, ge=2)
    derivative_samples: int = Field(settings.DERIVATIVE_SAMPLES, ge=1)

    @classmethod
    def from_settings(cls) -> "SweepConfig":
        return cls(
            max_m=settings.MAX_M,
            p_denominator_limit=settings.P_DENOMINATOR_LIMIT,
            grid_points_per_interval=settings.GRID_POINTS_PER_INTERVAL,
            seed=settings.SEED,
            max_k=settings.MAX_K,
            endpoint_samples=settings.ENDPOINT_SAMPLES,
            gamma_grid_points=settings.GAMMA_GRID_POINTS,
            derivative_samples=settings.DERIVATIVE_SAMPLES,
        )


class CertificateReport(BaseModel):
    """Outcome of one claim over one sweep.

    Margins and witness values are strings: exact rationals as "a/b",
    doubles as their shortest round-trip decimal.
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    claim: ClaimId
    config: SweepConfig
    passed: bool = Field(..., alias="pass")
    strict: bool
    worst_margin: str
    worst_witness: Dict[str, WitnessValue]
    checked_count: int = Field(..., ge=0)
    notes: List[str] = Field(default_factory=list)
    failures: List[Dict[str, WitnessValue]] = Field(default_factory=list)
    elapsed: float = Field(0.0, exclude=True)

    def to_json_dict(self) -> dict:
        return self.model_dump(mode="json", by_alias=True)

from enum import Enum
from fractions import Fraction
from typing import List, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from utils.rationals import parse_probability, parse_rational


class OutputFormat(str, Enum):
    JSON = "JSON"
    CSV = "CSV"
    PLAIN = "PLAIN"


class FigureKind(str, Enum):
    PMF_PANELS = "PMF_PANELS"
    TAIL_CURVES = "TAIL_CURVES"
    GRID_VS_BOUND = "GRID_VS_BOUND"


DEFAULT_PMF_PANELS: List[Tuple[int, Fraction]] = [
    (20, Fraction(1, 2)),
    (20, Fraction(1, 10)),
    (5, Fraction(1, 10)),
]
DEFAULT_TAIL_MS = list(range(2, 9))
DEFAULT_TAIL_STEP = Fraction(1, 1000)
DEFAULT_GRID_MS = [2, 22, 42, 62, 72]


class FigureSpec(BaseModel):
    """Which figure to emit and with which parameters.

    ``panels`` is used by PMF_PANELS, ``ms`` and ``step`` by TAIL_CURVES,
    ``ms`` alone by GRID_VS_BOUND.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    figure: FigureKind
    panels: List[Tuple[int, Fraction]] = Field(default_factory=list)
    ms: List[int] = Field(default_factory=list)
    step: Fraction = DEFAULT_TAIL_STEP
    edges: bool = False

    @field_validator("panels", mode="before")
    @classmethod
    def _exact_panels(cls, v):
        return [(int(m), parse_probability(p)) for m, p in v]

    @field_validator("step", mode="before")
    @classmethod
    def _exact_step(cls, v):
        return parse_rational(v)

    @model_validator(mode="after")
    def _check_params(self) -> "FigureSpec":
        if self.figure is FigureKind.PMF_PANELS and not self.panels:
            raise ValueError("PMF_PANELS needs at least one (m, p) pair")
        if any(m < 1 for m, _ in self.panels):
            raise ValueError("panel m must be >= 1")
        if self.figure is not FigureKind.PMF_PANELS:
            if not self.ms:
                raise ValueError(f"{self.figure.value} needs a list of m")
            if any(m < 2 for m in self.ms):
                raise ValueError("m must be >= 2")
        if not 0 < self.step <= 1:
            raise ValueError(f"step {self.step} must lie in (0, 1]")
        return self

    @classmethod
    def preset(cls, figure: FigureKind) -> "FigureSpec":
        if figure is FigureKind.PMF_PANELS:
            return cls(figure=figure, panels=DEFAULT_PMF_PANELS)
        if figure is FigureKind.TAIL_CURVES:
            return cls(figure=figure, ms=DEFAULT_TAIL_MS)
        return cls(figure=figure, ms=DEFAULT_GRID_MS)

from fractions import Fraction
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, field_serializer


class TowerLevel(BaseModel):
    """Level i of the Garcia-Stichtenoth tower over F_{q^2}."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    q: int
    index: int
    genus: int
    places: int
    ratio: Optional[Fraction] = None

    @field_serializer("ratio")
    def _ratio_as_text(self, ratio: Optional[Fraction]) -> Optional[str]:
        return None if ratio is None else str(ratio)


class RateSchedule(BaseModel):
    """One row of a rate/relative-distance schedule for a tower level."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    level: int
    alphabet: int
    t: int
    places: int
    genus: int
    n: int
    K: int
    sum_b: int
    sum_a: int
    d_lb: int
    weak_bound: Fraction
    strong_bound: Fraction
    rate: Fraction
    relative_distance: Fraction
    length: int
    dimension: int
    note: str = ""

    @field_serializer("weak_bound", "strong_bound", "rate", "relative_distance")
    def _fraction_as_text(self, value: Fraction) -> str:
        return str(value)


class TowerReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    q2: int
    c: Fraction
    t: int
    prime: Optional[int] = None
    window: Fraction
    limit: Fraction
    levels: List[TowerLevel]
    schedules: List[Optional[RateSchedule]]
    note: str = ""

    @field_serializer("c", "window", "limit")
    def _fraction_as_text(self, value: Fraction) -> str:
        return str(value)

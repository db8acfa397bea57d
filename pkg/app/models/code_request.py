from fractions import Fraction
from typing import List, Optional

from pydantic import BaseModel, Field, field_validator, model_validator


class CodeRequest(BaseModel):
    """
    A code C_L(D, G) on y^q + y = x^m.

    Either ``a`` (G = sum a_i P_i on the last rational places, a single entry
    meaning a P_inf) or ``t`` (G = t Q for the first degree-2 place Q).
    """

    q: int
    m: int
    a: Optional[List[int]] = None
    t: Optional[int] = None
    dual: bool = False
    include_generator: bool = False

    @model_validator(mode="after")
    def _one_divisor(self):
        if (self.a is None) == (self.t is None):
            raise ValueError("give exactly one of a and t")
        if self.a is not None and not self.a:
            raise ValueError("a must not be empty")
        return self


class CssRequest(BaseModel):
    q: int
    m: int
    a: Optional[List[int]] = None
    b: Optional[List[int]] = None
    t1: Optional[int] = None
    t2: Optional[int] = None
    explicit: bool = True
    include_matrices: bool = False

    @model_validator(mode="after")
    def _one_construction(self):
        rational = self.a is not None and self.b is not None
        degree_two = self.t1 is not None and self.t2 is not None
        if rational == degree_two:
            raise ValueError("give either a and b, or t1 and t2")
        return self


class CertifyRequest(BaseModel):
    q: int
    m: int
    a: List[int] = Field(min_length=1)
    b: Optional[List[int]] = None
    dual: bool = False
    budget: Optional[int] = Field(default=None, gt=0)


class ExpandRequest(BaseModel):
    q: int
    m: int
    a: List[int] = Field(min_length=1)
    b: Optional[List[int]] = None
    include_generator: bool = False


class TowerRequest(BaseModel):
    q2: int
    levels: int = Field(ge=1)
    c: str = "1/10"
    t: int = Field(default=2, ge=1)
    prime: Optional[int] = None

    @field_validator("c")
    @classmethod
    def _parse_rational(cls, value: str) -> str:
        try:
            Fraction(value)
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"c must be a rational such as 1/10: {e}")
        return value

from typing import List, Literal, Optional

from pydantic import BaseModel, model_validator


class PublishedTableRow(BaseModel):
    """One published table entry: code parameters and the construction inputs."""

    n: int
    k: int
    d: int
    alphabet: int
    q: int
    m: int
    a: Optional[List[int]] = None
    b: Optional[List[int]] = None
    t1: Optional[int] = None
    t2: Optional[int] = None

    @model_validator(mode="after")
    def _check_inputs(self):
        rational = self.a is not None and self.b is not None
        degree_two = self.t1 is not None and self.t2 is not None
        if rational == degree_two:
            raise ValueError("a row needs either (a, b) or (t1, t2)")
        if self.alphabet != self.q * self.q:
            raise ValueError(f"alphabet {self.alphabet} is not q^2 for q = {self.q}")
        return self


class TableRowResult(BaseModel):
    table: int
    q: int
    m: int
    inputs: str
    n: int
    k: int
    d_lb: int
    alphabet: int
    singleton_defect: int
    published: str
    status: Literal["MATCH", "MISMATCH"]
    explicit: bool = False
    matrix_k: Optional[int] = None

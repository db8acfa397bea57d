from typing import Optional

from pydantic import BaseModel, Field, computed_field, model_validator


class QuantumParams(BaseModel):
    n: int = Field(gt=0)
    k: int = Field(ge=0)
    d_lb: Optional[int] = None
    exact_d: Optional[int] = None
    q: int

    @model_validator(mode="after")
    def _check_singleton(self):
        if self.exact_d is not None and self.k + 2 * self.exact_d > self.n + 2:
            raise ValueError(
                f"k + 2d = {self.k + 2 * self.exact_d} exceeds n + 2 = {self.n + 2}"
            )
        return self

    @computed_field
    @property
    def singleton_defect(self) -> Optional[int]:
        """Upper bound n + 2 - k - 2 d_lb on the defect; exact when exact_d is known."""
        d = self.exact_d if self.exact_d is not None else self.d_lb
        if d is None:
            return None
        return self.n + 2 - self.k - 2 * d

    def label(self) -> str:
        if self.exact_d is not None:
            d = f"{self.exact_d}"
        elif self.d_lb is not None:
            d = f"d>={self.d_lb}"
        else:
            d = "d=?"
        return f"[[{self.n}, {self.k}, {d}]]_{self.q}"

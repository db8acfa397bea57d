from typing import Optional

from pydantic import BaseModel


class CheckResult(BaseModel):
    suite: str
    invariant: str
    passed: bool
    trials: int = 1
    detail: Optional[str] = None

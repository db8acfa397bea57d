from typing import List, Optional

from pydantic import BaseModel


class ErrorDetail(BaseModel):
    """Body of a failed request: the library error class, its message and, for internal errors, the invariant."""

    error_type: str
    message: str
    invariant: Optional[str] = None
    failures: List[str] = []

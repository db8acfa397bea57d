from fastapi import HTTPException

from app.core.errors import AGCodesError, InvariantViolation, ParameterRangeError
from app.models.error_details import ErrorDetail


def http_error(e: AGCodesError) -> HTTPException:
    """400 for rejected input, 500 for a violated invariant."""
    if isinstance(e, InvariantViolation):
        detail = ErrorDetail(error_type=type(e).__name__, message=str(e), invariant=e.invariant)
        return HTTPException(status_code=500, detail=detail.model_dump())
    failures = e.failures if isinstance(e, ParameterRangeError) else []
    detail = ErrorDetail(error_type=type(e).__name__, message=str(e), failures=failures)
    return HTTPException(status_code=400, detail=detail.model_dump())

import logging
from fractions import Fraction

from fastapi import APIRouter

from app.api.v1.errors import http_error
from app.core.errors import AGCodesError
from app.models.code_request import TowerRequest
from app.services.tower_service import TowerService

logger = logging.getLogger(__name__)
router = APIRouter()


@router.post("/tower")
def tower_schedule(request: TowerRequest):
    try:
        report = TowerService.report(request.q2, request.levels, Fraction(request.c), request.t, request.prime)
        return report.model_dump(mode="json")
    except AGCodesError as e:
        logger.error(f"Error computing tower schedule: {str(e)}")
        raise http_error(e)

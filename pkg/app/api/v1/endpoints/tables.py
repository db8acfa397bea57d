import logging
from typing import List

from fastapi import APIRouter, HTTPException

from app.api.v1.errors import http_error
from app.core.errors import AGCodesError
from app.models.table_row import TableRowResult
from app.services.table_service import TableService

logger = logging.getLogger(__name__)
router = APIRouter()


@router.get("/tables/{which}", response_model=List[TableRowResult])
def reproduce_table(which: int, explicit: bool = False):
    if which not in (1, 2, 3):
        raise HTTPException(status_code=404, detail=f"No table {which}")
    try:
        return TableService.reproduce(which, explicit=explicit)
    except AGCodesError as e:
        logger.error(f"Error reproducing table {which}: {str(e)}")
        raise http_error(e)

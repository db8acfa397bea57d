import logging

from fastapi import APIRouter

from app.api.v1.errors import http_error
from app.core.errors import AGCodesError
from app.models.code_request import CertifyRequest, CodeRequest, CssRequest, ExpandRequest
from app.models.code_summary import CertificationResult, CodeSummary, CssSummary, ExpansionSummary
from app.services.code_service import CodeService

logger = logging.getLogger(__name__)
router = APIRouter()


@router.post("/build", response_model=CodeSummary)
def build_code(request: CodeRequest):
    try:
        logger.info("Building code on (%d, %d)", request.q, request.m)
        return CodeService.build(
            request.q, request.m, request.a, request.t, request.dual, request.include_generator
        )
    except AGCodesError as e:
        logger.error(f"Error building code: {str(e)}")
        raise http_error(e)


@router.post("/css", response_model=CssSummary)
def css_code(request: CssRequest):
    try:
        return CodeService.css(
            request.q,
            request.m,
            request.a,
            request.b,
            request.t1,
            request.t2,
            request.explicit,
            request.include_matrices,
        )
    except AGCodesError as e:
        logger.error(f"Error assembling CSS code: {str(e)}")
        raise http_error(e)


@router.post("/certify", response_model=CertificationResult)
def certify_distance(request: CertifyRequest):
    try:
        return CodeService.certify(request.q, request.m, request.a, request.b, request.dual, request.budget)
    except AGCodesError as e:
        logger.error(f"Error certifying distance: {str(e)}")
        raise http_error(e)


@router.post("/expand")
def expand_code(request: ExpandRequest):
    try:
        if request.b:
            return CodeService.expand_css(request.q, request.m, request.a, request.b, request.include_generator)
        return CodeService.expand(request.q, request.m, request.a, request.include_generator)
    except AGCodesError as e:
        logger.error(f"Error expanding code: {str(e)}")
        raise http_error(e)

# API/routes.py
from __future__ import annotations

from fastapi import APIRouter, HTTPException

from Core import constants
from Core.config import get_logger
from Core.errors import GraphMatchError, ParameterDomainError
from Recovery.thresholds import RegimeReport

from .schemas import EstimateDocument, GenerateRequest, MatchRequest, RegimeRequest, SampleDocument
from .service import generate_document, handle_match, handle_regime

logger = get_logger(__name__)

router = APIRouter(tags=["matching"])

_STATUS_BY_EXIT = {
    constants.EXIT_PARAMETER: 422,
    constants.EXIT_INPUT: 422,
    constants.EXIT_CAPACITY: 413,
    constants.EXIT_MODE: 409,
    constants.EXIT_INFEASIBLE: 409,
    constants.EXIT_CONFIGURATION: 400,
}


def _http_error(err: Exception) -> HTTPException:
    if not isinstance(err, GraphMatchError):
        err = ParameterDomainError(str(err))
    logger.info({"event": "request_rejected", **err.to_dict()})
    return HTTPException(status_code=_STATUS_BY_EXIT.get(err.exit_code, 500), detail=err.to_dict())


@router.post("/generate", response_model=SampleDocument)
def generate(payload: GenerateRequest) -> SampleDocument:
    """Draw one sample pair; pi_star is dropped unless include_truth is set."""
    try:
        return generate_document(payload.params, payload.seed, payload.include_truth)
    except (GraphMatchError, ValueError) as e:
        raise _http_error(e) from e


@router.post("/match", response_model=EstimateDocument)
def match(payload: MatchRequest) -> EstimateDocument:
    """Run the k-core stage and the feature completion on a posted sample."""
    try:
        return handle_match(payload)
    except (GraphMatchError, ValueError) as e:
        raise _http_error(e) from e


@router.post("/regime", response_model=RegimeReport)
def regime(payload: RegimeRequest) -> RegimeReport:
    try:
        return handle_regime(payload)
    except (GraphMatchError, ValueError) as e:
        raise _http_error(e) from e

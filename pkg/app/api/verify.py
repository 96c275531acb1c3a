"""
Congruence check endpoints.
"""
import inspect
from typing import Optional

from fastapi import APIRouter, HTTPException, Query
from fastapi.responses import JSONResponse

from app.api._common import run_in_pool
from app.services.report import record_fields
from app.services.verifier import CHECKS
import logging

logger = logging.getLogger(__name__)
router = APIRouter()

EXPLORATIONS = {"q1", "q2"}


@router.get("")
async def list_checks():
    """Names of the checks that can be run one at a time."""
    return JSONResponse(content={
        "success": True,
        "checks": sorted(name for name in CHECKS if name not in EXPLORATIONS),
    })


@router.get("/{check}")
async def verify_check(
    check: str,
    p: Optional[int] = Query(None, ge=3),
    r: int = Query(1, ge=1),
    m: Optional[int] = Query(None, ge=1),
    x: Optional[int] = Query(None, ge=1),
    n: Optional[int] = Query(None, ge=0),
    shift: Optional[int] = Query(None, ge=1, le=2),
    reduced: bool = False,
):
    """
    Run one named check and return its record.

    Only the query parameters the check takes are used; e.g.
    /api/verify/theorem1?p=5&r=1 or /api/verify/lemma22?x=2&p=5&r=2.
    """
    if check not in CHECKS or check in EXPLORATIONS:
        raise HTTPException(status_code=404, detail=f"Unknown check: {check}")

    fn = CHECKS[check]
    available = {"p": p, "r": r, "m": m, "x": x, "n": n, "shift": shift, "use_reduced": reduced}
    kwargs = {}
    for name, parameter in inspect.signature(fn).parameters.items():
        if name == "caps":
            continue
        value = available.get(name)
        if value is None:
            if parameter.default is inspect.Parameter.empty:
                raise HTTPException(status_code=400, detail=f"Missing parameter '{name}' for {check}")
            continue
        kwargs[name] = value

    record = await run_in_pool(fn, **kwargs)
    logger.info(f"{check} {kwargs}: pass={record.passed}")
    return JSONResponse(content={
        "success": True,
        "record": record_fields(record, timings=True, visits=True),
    })

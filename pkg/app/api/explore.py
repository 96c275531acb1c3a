"""
Open-question exploration and Bernoulli lookup endpoints.

Exploration records carry the computed residue only, never a verdict.
"""
from fastapi import APIRouter, HTTPException, Query
from fastapi.responses import JSONResponse

from app import config
from app.api._common import run_in_pool
from app.services.bernoulli import bernoulli_exact, bernoulli_pm3_mod_p
from app.services.report import record_fields
from app.services.verifier import explore_q1, explore_q2
import logging

logger = logging.getLogger(__name__)
router = APIRouter()

MAX_Q1_SPAN = 1000


@router.get("/explore/q1")
async def explore_q1_endpoint(
    n_min: int = Query(config.Q1_N_MIN, ge=3),
    n_max: int = Query(config.Q1_N_MAX, ge=3),
):
    """Residue of the alternating triple sum over parts prime to n, mod n, for each n."""
    if n_max < n_min:
        raise HTTPException(status_code=400, detail="n_max must be >= n_min")
    if n_max - n_min >= MAX_Q1_SPAN:
        raise HTTPException(status_code=400, detail=f"At most {MAX_Q1_SPAN} values of n per request")

    records = await run_in_pool(explore_q1, range(n_min, n_max + 1))
    return JSONResponse(content={
        "success": True,
        "count": len(records),
        "records": [record_fields(record) for record in records],
    })


@router.get("/explore/q2")
async def explore_q2_endpoint(
    parts: int = Query(config.Q2_PARTS, ge=4),
    p: int = Query(..., ge=3),
    r: int = Query(1, ge=1),
):
    """Residue of the parts-fold alternating sum over compositions of p^r."""
    record = await run_in_pool(explore_q2, parts, p, r)
    return JSONResponse(content={"success": True, "record": record_fields(record)})


@router.get("/bernoulli/exact/{n}")
async def bernoulli_exact_endpoint(n: int):
    """Exact B_n as a reduced fraction."""
    if n < 0:
        raise HTTPException(status_code=400, detail="n must be >= 0")
    value = await run_in_pool(bernoulli_exact, n)
    return JSONResponse(content={
        "success": True,
        "n": n,
        "numerator": str(value.numerator),
        "denominator": str(value.denominator),
    })


@router.get("/bernoulli/{p}")
async def bernoulli_mod_p_endpoint(p: int):
    """B_{p-3} mod p by both methods."""
    exact = await run_in_pool(bernoulli_pm3_mod_p, p, "exact-reduction")
    half = await run_in_pool(bernoulli_pm3_mod_p, p, "lemma-half-sum")
    if exact.value != half.value:
        logger.error(f"Bernoulli methods disagree for p={p}: {exact.value} vs {half.value}")
    return JSONResponse(content={
        "success": True,
        "p": p,
        "value": str(exact.value.value),
        "methods": {
            exact.method: str(exact.value.value),
            half.method: str(half.value.value),
        },
        "agree": exact.value == half.value,
    })

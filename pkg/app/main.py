from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from app import config
from app.api.explore import router as explore_router
from app.api.verify import router as verify_router
from app.services.bernoulli import bernoulli_table
import logging

logger = logging.getLogger(__name__)

app = FastAPI(
    title="Harmonic Congruences",
    description="Verify alternating triple harmonic sum congruences modulo prime powers",
    version="1.0.0"
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["GET"],
    allow_headers=["*"],
)

# Include API routers
app.include_router(verify_router, prefix="/api/verify", tags=["verify"])
app.include_router(explore_router, prefix="/api", tags=["explore"])


@app.on_event("startup")
async def startup_event():
    """Warm the Bernoulli memo so the first exact-reduction request is not the slow one."""
    try:
        bernoulli_table(config.HALF_CUBIC_P_MAX - 3)
        logger.info(f"Bernoulli numbers up to B_{config.HALF_CUBIC_P_MAX - 3} cached")
    except Exception as e:
        logger.error(f"Failed to warm Bernoulli cache: {str(e)}")
        # filled lazily on first request


@app.get("/")
def health_check():
    return {"status": "ok", "message": "Harmonic congruence verifier is running"}

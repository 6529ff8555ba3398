"""
Main application module.
"""

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from chaoskit import __version__
from chaoskit.errors import ChaosKitError, HypothesisFailed
from chaoskit.models.responses import ErrorResponse, HealthResponse
from chaoskit.routers import main_router
from chaoskit.utils.logging import get_logger, setup_logging

# Setup logging
setup_logging()
logger = get_logger(__name__)

# Create FastAPI app
app = FastAPI(
    title="chaoskit",
    description="Shadowing, scrambled tuples and distributional chaos on subshifts of finite type",
    version=__version__,
)

# Add CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Include the main router
app.include_router(main_router)


@app.exception_handler(ChaosKitError)
async def chaoskit_error_handler(request: Request, exc: ChaosKitError):
    """Hypothesis failures map to 422, every other domain error to 400."""
    status = 422 if isinstance(exc, HypothesisFailed) else 400
    logger.warning(f"{request.url.path}: {type(exc).__name__}: {exc}")
    body = ErrorResponse(error=type(exc).__name__, detail=str(exc))
    return JSONResponse(status_code=status, content=body.model_dump())


@app.get("/health", response_model=HealthResponse)
async def health_check():
    """Health check endpoint."""
    return HealthResponse(status="ok", version=__version__)


@app.middleware("http")
async def log_requests(request: Request, call_next):
    """Log all incoming requests."""
    logger.debug(f"Request: {request.method} {request.url.path}")
    response = await call_next(request)
    return response

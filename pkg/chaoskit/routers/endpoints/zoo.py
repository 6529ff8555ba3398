"""
Zoo endpoints.
"""

from fastapi import APIRouter

from chaoskit.models.responses import ZooEntry, ZooResponse
from chaoskit.services.zoo import catalog, compile_system
from chaoskit.utils.logging import get_logger

# Initialize logger
logger = get_logger(__name__)

# Create router
router = APIRouter(tags=["zoo"])


@router.get("/zoo", response_model=ZooResponse)
def list_zoo():
    """List the catalog systems with their compiled sizes."""
    logger.debug("Zoo requested")
    entries = []
    for name, spec in catalog().items():
        s = compile_system(spec)
        entries.append(ZooEntry(name=name, kind=spec.kind, alphabet_size=s.alphabet_size, provenance=s.provenance))
    return ZooResponse(systems=entries)

"""
Routers package for the application.
"""

from fastapi import APIRouter

from chaoskit.routers.endpoints import analysis_router, zoo_router

# Create main router
main_router = APIRouter()

# Include all endpoint routers in the main router
main_router.include_router(zoo_router, prefix="/api")
main_router.include_router(analysis_router, prefix="/api")

__all__ = [
    'main_router',
]

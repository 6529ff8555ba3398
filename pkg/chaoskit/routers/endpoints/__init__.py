"""
API endpoints package.
"""

from chaoskit.routers.endpoints.analysis import router as analysis_router
from chaoskit.routers.endpoints.zoo import router as zoo_router

__all__ = [
    'analysis_router',
    'zoo_router',
]

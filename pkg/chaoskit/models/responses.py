"""
Response models for the API.
"""

from typing import List, Optional

from pydantic import BaseModel, Field


class ErrorResponse(BaseModel):
    """Error response model."""

    error: str = Field(..., description="Error class")
    detail: Optional[str] = Field(None, description="Detailed error information")


class HealthResponse(BaseModel):
    status: str = "ok"
    version: str


class ZooEntry(BaseModel):
    """One catalog system."""

    name: str
    kind: str
    alphabet_size: int = Field(..., description="Symbols of the compiled presentation")
    provenance: str


class ZooResponse(BaseModel):
    systems: List[ZooEntry]

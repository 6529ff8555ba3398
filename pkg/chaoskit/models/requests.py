"""
Request models for the API.
"""

from fractions import Fraction
from typing import List, Optional

from pydantic import BaseModel, Field, model_validator

from chaoskit.models.base import Exact
from chaoskit.models.reports import ReportOptions
from chaoskit.models.systems import SystemSpec


class SystemRequest(BaseModel):
    """A zoo name or an inline system definition."""

    zoo: Optional[str] = Field(None, description="Name of a zoo system")
    definition: Optional[SystemSpec] = Field(None, description="Inline system definition")

    @model_validator(mode="after")
    def _one_source(self) -> "SystemRequest":
        if (self.zoo is None) == (self.definition is None):
            raise ValueError("give exactly one of zoo and definition")
        return self


class CheckRequest(SystemRequest):
    """Property checks for one system."""

    options: ReportOptions = Field(default_factory=ReportOptions)


class TraceRequest(SystemRequest):
    """Pseudo-orbit to trace."""

    delta: Exact = Field(..., description="Jump tolerance")
    entries: List[str] = Field(..., description="Point literals u(w)")
    eps: Optional[Exact] = Field(None, description="Accuracy to certify (default 2*delta)")


class ClassifyTupleRequest(SystemRequest):
    """Tuple to classify."""

    points: List[str] = Field(..., description="Point literals u(w)")
    eps: Exact = Field(..., description="eps for regional proximality, asymptoticity and distality")
    delta: Optional[Exact] = Field(None, description="Separation for distributional scrambling")
    horizon: Optional[int] = Field(None, ge=2, description="Largest checkpoint for HORIZON evidence")


class BuildScrambledRequest(SystemRequest):
    """Scrambled family construction."""

    n: int = Field(2, ge=2, description="Sub-tuple size")
    family: Optional[int] = Field(None, ge=2, description="Family size (defaults to n)")
    eta: Exact = Field(default_factory=lambda: Fraction(1, 8))

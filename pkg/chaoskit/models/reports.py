"""
Report models.
"""

from fractions import Fraction
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from chaoskit.models.base import EvidenceKind, Exact
from chaoskit.models.certificates import DichotomyVerdict, DistalTargets, TupleCertificate


class ScrambledFamilyReport(BaseModel):
    """A finite family whose n-sub-tuples are distributionally n-delta-scrambled."""

    route: str = Field(..., description="'direct', 'periodic_decomposition' or 'weak_mixing'")
    size: int = Field(..., description="Family size m")
    n: int = Field(..., description="Sub-tuple size")
    delta: Exact = Field(..., description="Separation delta_n certified for every sub-tuple")
    eta: Exact
    points: List[str] = Field(..., description="Plan descriptions of the family members")
    prefixes: List[str] = Field(..., description="Words the members start with")
    approximation: List[Exact] = Field(default_factory=list, description="d(x_i, member_i) bound per input")
    targets: DistalTargets
    common_source: str
    bridge_length: int
    groups: int = Field(..., description="DISTAL groups in one rotation")
    power: int = Field(1, description="Power q of the presentation the plan was built in")
    power_delta: Optional[Exact] = Field(None, description="Separation in the power presentation")
    distortion: Optional[Exact] = Field(None, description="delta / power_delta after decoding")
    subtuples: int = Field(..., description="Number of n-sub-tuples of the family")
    sampled: bool = Field(False, description="Certificates cover a deterministic sample")
    certificates: List[TupleCertificate] = Field(default_factory=list)
    objects: List[Any] = Field(default_factory=list, exclude=True)
    plan: Any = Field(None, exclude=True)

    @property
    def holds(self) -> bool:
        return bool(self.certificates) and all(c.holds for c in self.certificates)


class PropertyVerdict(BaseModel):
    """One system-level property and the operation that decided it."""

    name: str
    holds: Optional[bool] = None
    value: Optional[str] = None
    operation: str
    evidence: EvidenceKind = EvidenceKind.EXACT
    informational: bool = Field(False, description="Reported only; does not affect the exit status")
    note: str = ""


class SystemSummary(BaseModel):
    name: str
    alphabet_size: int
    provenance: str
    labels: List[str] = Field(default_factory=list)
    matrix: List[List[int]]
    caveat: Optional[str] = None


class Report(BaseModel):
    """Everything `check` and the build commands compute for one system."""

    system: SystemSummary
    properties: List[PropertyVerdict] = Field(default_factory=list)
    entropy: Optional[float] = None
    reference_entropy: Optional[float] = Field(None, description="Known entropy of an ingested interval map")
    period: Optional[int] = None
    periodic_counts: Dict[int, int] = Field(default_factory=dict)
    dichotomy: Optional[DichotomyVerdict] = None
    families: List[ScrambledFamilyReport] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)

    @property
    def all_positive(self) -> bool:
        return all(p.holds is not False for p in self.properties if not p.informational) and all(f.holds for f in self.families)


class ScrambleOptions(BaseModel):
    """Parameters of a scrambled-family construction inside a report."""

    n: int = Field(2, ge=2)
    family: Optional[int] = Field(None, ge=2, description="Family size m (defaults to n)")
    eta: Exact = Field(default_factory=lambda: Fraction(1, 8))


class ReportOptions(BaseModel):
    """Analyses requested from run_report."""

    entropy: bool = True
    devaney: bool = True
    dichotomy: bool = True
    periodic_counts: int = Field(0, ge=0, description="Report trace(A^p) for p = 1..this")
    scramble: Optional[ScrambleOptions] = None

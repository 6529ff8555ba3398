"""
Certificate models: machine-checkable verdicts with their evidence.
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from chaoskit.models.base import Dichotomy, EvidenceKind, Exact, VerdictName


class TraceCertificate(BaseModel):
    """A point that traces a pseudo-orbit, with the checked distances."""

    traced: str = Field(..., description="Literal (or plan description) of the traced point")
    delta: Exact = Field(..., description="Jump tolerance of the pseudo-orbit")
    epsilon: Exact = Field(..., description="Tracing accuracy asserted")
    entries: int = Field(..., description="Listed pseudo-orbit entries")
    distances: List[Exact] = Field(default_factory=list, description="d(sigma^n z, x_n) per listed entry")
    max_distance: Exact = Field(..., description="Largest checked distance (the tail contributes 0)")
    bound: Exact = Field(..., description="Distance bound implied by the jump tolerance")
    evidence: EvidenceKind = Field(..., description="EXACT when every distance was decided exactly")
    horizon: Optional[int] = Field(None, description="Comparison window for scheduled entries")
    verified: bool = Field(..., description="max_distance < epsilon")
    point: Any = Field(None, exclude=True, description="The traced point object")


class RpWitness(BaseModel):
    """Regionally proximal witness: y_i close to x_i whose orbits meet at time k."""

    points: List[str] = Field(..., description="Witness points y_i")
    k: int = Field(..., ge=0, description="Time at which the y-tuple collapses")
    epsilon: Exact
    depth: int = Field(..., description="Prefix length kept from each x_i")
    target_symbol: Optional[int] = Field(None, description="Common symbol reached at time k")
    approximation: List[Exact] = Field(..., description="d(x_i, y_i)")
    diameter: Exact = Field(..., description="diam of the y-tuple at time k")
    objects: List[Any] = Field(default_factory=list, exclude=True)


class SensitivityWitness(BaseModel):
    """Points inside a cylinder whose k-th iterates reach prescribed targets."""

    cylinder: str = Field(..., description="Cylinder word U")
    targets: List[str]
    points: List[str]
    k: int = Field(..., ge=0)
    epsilon: Exact
    target_distances: List[Exact] = Field(..., description="d(sigma^k y_i, x_i)")
    objects: List[Any] = Field(default_factory=list, exclude=True)


class DensityRow(BaseModel):
    """Exact (or horizon) count of hit times below a checkpoint."""

    checkpoint: int = Field(..., description="Horizon N (counts times 0..N-1)")
    block: Optional[int] = Field(None, description="Block whose end is the checkpoint")
    kind: str = Field(..., description="'close' or 'separated'")
    threshold: Exact = Field(..., description="t for closeness, delta for separation")
    count: int
    density: Exact
    lower_bound: Optional[Exact] = Field(None, description="Structural bound (body - window) / N")


class Verdict(BaseModel):
    """One relation and how it was decided."""

    name: VerdictName
    holds: bool
    parameter: Optional[Exact] = Field(None, description="eps or delta of the relation")
    evidence: EvidenceKind
    horizon: Optional[int] = Field(None, description="Largest horizon used by HORIZON evidence")
    value: Optional[Exact] = Field(None, description="Deciding quantity (limsup diam, liminf distance, ...)")
    note: str = ""


class TupleCertificate(BaseModel):
    """Verdicts about a tuple, each with replayable evidence."""

    points: List[str]
    verdicts: List[Verdict] = Field(default_factory=list)
    witness: Optional[RpWitness] = None
    densities: List[DensityRow] = Field(default_factory=list)
    details: Dict[str, Any] = Field(default_factory=dict)

    def verdict(self, name: VerdictName) -> Optional[Verdict]:
        for v in self.verdicts:
            if v.name == name:
                return v
        return None

    @property
    def holds(self) -> bool:
        return bool(self.verdicts) and all(v.holds for v in self.verdicts)

    @property
    def evidence(self) -> EvidenceKind:
        if all(v.evidence == EvidenceKind.EXACT for v in self.verdicts):
            return EvidenceKind.EXACT
        return EvidenceKind.HORIZON


class DistributionProfile(BaseModel):
    """Phi^n(t) for a pair over a grid of thresholds and horizons."""

    points: List[str]
    thresholds: List[Exact]
    horizons: List[int]
    values: List[List[Exact]] = Field(..., description="values[i][j] = Phi^{horizons[j]}(thresholds[i])")
    limits: Optional[List[Exact]] = Field(None, description="Exact limits when both points are eventually periodic")


class DensityEstimate(BaseModel):
    """Upper density of an index set."""

    value: Exact
    evidence: EvidenceKind
    checkpoints: List[int] = Field(default_factory=list)
    densities: List[Exact] = Field(default_factory=list, description="(1/n) #(F n [0,n)) at each checkpoint")


class PhiLimits(BaseModel):
    """liminf and limsup of Phi^n(t) as n grows."""

    threshold: Exact
    liminf: Exact
    limsup: Exact
    exists: bool = Field(..., description="liminf == limsup")


class DichotomyVerdict(BaseModel):
    """Sensitive-or-equicontinuous outcome for a transitive SFT."""

    dichotomy: Dichotomy
    constant: Optional[Exact] = Field(None, description="Sensitivity constant")
    witness: Optional[SensitivityWitness] = None
    note: str = ""


class DistalTargets(BaseModel):
    """Pairwise distinct periodic points used as DISTAL block sources."""

    targets: List[str]
    separation: Exact = Field(..., description="Exact liminf of the least pairwise tail distance")
    eps: Exact = Field(..., description="Half the separation")
    period: int = Field(..., description="Largest least period among the targets")
    sensitivity: Optional[SensitivityWitness] = None
    objects: List[Any] = Field(default_factory=list, exclude=True)


class ConstructionResult(BaseModel):
    """Points built near a given tuple, with the certificate they satisfy."""

    kind: str = Field(..., description="'asymptotic' or 'distal'")
    inputs: List[str]
    points: List[str]
    epsilon: Exact = Field(..., description="Relation parameter certified")
    eta: Exact = Field(..., description="Requested approximation scale")
    approximation: List[Exact] = Field(..., description="d(x_i, output_i)")
    certificate: TupleCertificate
    traces: List[TraceCertificate] = Field(default_factory=list)
    witness: Optional[RpWitness] = None
    targets: Optional[DistalTargets] = None
    power: int = Field(1, description="Power q of the presentation the tuple was built in")
    power_delta: Optional[Exact] = Field(None, description="Target separation eps in the power presentation")
    distortion: Optional[Exact] = Field(None, description="epsilon / power_delta after decoding")
    objects: List[Any] = Field(default_factory=list, exclude=True)

    @property
    def approximates(self) -> bool:
        return all(d < 2 * self.eta for d in self.approximation)


class RouteDecision(BaseModel):
    """Which construction route applies to a transitive SFT."""

    route: str = Field(..., description="'fixed_point' or 'periodic_decomposition'")
    period: int = Field(..., description="Graph period q")
    fixed_points: List[str] = Field(default_factory=list)
    periodic_point: Optional[str] = Field(None, description="Periodic point the decomposition starts from")
    note: str = ""

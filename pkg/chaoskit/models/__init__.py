"""
Models package.
"""

from chaoskit.models.base import (
    EvidenceKind,
    VerdictName,
    BlockMode,
    Dichotomy,
    ChaosKitSettings,
    Exact,
    parse_fraction,
)

from chaoskit.models.certificates import (
    TraceCertificate,
    RpWitness,
    SensitivityWitness,
    DensityRow,
    Verdict,
    TupleCertificate,
    DistributionProfile,
    DensityEstimate,
    PhiLimits,
    DichotomyVerdict,
    DistalTargets,
    ConstructionResult,
    RouteDecision,
)

from chaoskit.models.systems import (
    FullShiftSpec,
    MatrixSpec,
    ForbiddenWordsSpec,
    OdometerProductSpec,
    MarkovMapSpec,
    SystemSpec,
)

from chaoskit.models.reports import (
    ScrambledFamilyReport,
    PropertyVerdict,
    SystemSummary,
    Report,
    ScrambleOptions,
    ReportOptions,
)

from chaoskit.models.requests import (
    SystemRequest,
    CheckRequest,
    TraceRequest,
    ClassifyTupleRequest,
    BuildScrambledRequest,
)

from chaoskit.models.responses import (
    ErrorResponse,
    HealthResponse,
    ZooEntry,
    ZooResponse,
)

__all__ = [
    # Base models
    'EvidenceKind',
    'VerdictName',
    'BlockMode',
    'Dichotomy',
    'ChaosKitSettings',
    'Exact',
    'parse_fraction',

    # Certificates
    'TraceCertificate',
    'RpWitness',
    'SensitivityWitness',
    'DensityRow',
    'Verdict',
    'TupleCertificate',
    'DistributionProfile',
    'DensityEstimate',
    'PhiLimits',
    'DichotomyVerdict',
    'DistalTargets',
    'ConstructionResult',
    'RouteDecision',

    # System definitions
    'FullShiftSpec',
    'MatrixSpec',
    'ForbiddenWordsSpec',
    'OdometerProductSpec',
    'MarkovMapSpec',
    'SystemSpec',

    # Reports
    'ScrambledFamilyReport',
    'PropertyVerdict',
    'SystemSummary',
    'Report',
    'ScrambleOptions',
    'ReportOptions',

    # Request models
    'SystemRequest',
    'CheckRequest',
    'TraceRequest',
    'ClassifyTupleRequest',
    'BuildScrambledRequest',

    # Response models
    'ErrorResponse',
    'HealthResponse',
    'ZooEntry',
    'ZooResponse',
]

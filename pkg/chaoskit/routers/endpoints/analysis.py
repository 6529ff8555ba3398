"""
Analysis endpoints: property checks, tracing, tuple classification and constructions.
"""

from typing import Tuple

from fastapi import APIRouter

from chaoskit.models.certificates import TraceCertificate, TupleCertificate
from chaoskit.models.reports import Report, ScrambledFamilyReport
from chaoskit.models.requests import (
    BuildScrambledRequest,
    CheckRequest,
    ClassifyTupleRequest,
    SystemRequest,
    TraceRequest,
)
from chaoskit.models.systems import SystemSpec
from chaoskit.services.chaos_metrics import classify_tuple
from chaoskit.services.constructions import build_scrambled_family
from chaoskit.services.report_service import run_report
from chaoskit.services.sft import Sft
from chaoskit.services.shadowing import PseudoOrbit, trace
from chaoskit.services.zoo import compile_system, lookup
from chaoskit.utils.literals import parse_points
from chaoskit.utils.logging import get_logger

# Initialize logger
logger = get_logger(__name__)

# Create router
router = APIRouter(tags=["analysis"])


def resolve_system(request: SystemRequest) -> Tuple[str, SystemSpec, Sft]:
    """Compile the system a request refers to."""
    if request.zoo is not None:
        spec = lookup(request.zoo)
        return request.zoo, spec, compile_system(spec)
    spec = request.definition
    return spec.name or spec.kind, spec, compile_system(spec)


@router.post("/check", response_model=Report)
def check(request: CheckRequest):
    """Run the property report for a system."""
    name, spec, s = resolve_system(request)
    logger.info(f"Check requested for {name}")
    return run_report(name, s, request.options, spec)


@router.post("/trace", response_model=TraceCertificate)
def trace_pseudo_orbit(request: TraceRequest):
    """Trace a pseudo-orbit given as point literals."""
    _, _, s = resolve_system(request)
    po = PseudoOrbit(system=s, entries=parse_points(request.entries, s.alphabet_size), delta=request.delta)
    return trace(po, request.eps)


@router.post("/classify-tuple", response_model=TupleCertificate)
def classify(request: ClassifyTupleRequest):
    """Certify every relation for a tuple of eventually periodic points."""
    _, _, s = resolve_system(request)
    points = parse_points(request.points, s.alphabet_size)
    checkpoints = [request.horizon] if request.horizon else None
    return classify_tuple(s, points, request.eps, request.delta, checkpoints=checkpoints)


@router.post("/build-scrambled", response_model=ScrambledFamilyReport)
def build_scrambled(request: BuildScrambledRequest):
    """Build a scrambled family and certify its sub-tuples."""
    name, _, s = resolve_system(request)
    logger.info(f"Scrambled family requested for {name}: n={request.n}, family={request.family}")
    return build_scrambled_family(s, request.family or request.n, request.n, request.eta)

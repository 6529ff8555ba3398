"""
Pseudo-orbits and the first-symbol tracer.

A delta-pseudo-orbit whose jumps are below delta agrees, after each shift,
with its successor on the closeness window of delta. Reading off the first
symbol of every entry then gives a genuine orbit that stays within
2^-(window+1) of the pseudo-orbit.
"""

from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field

from chaoskit.errors import (
    DeltaTooLarge,
    NotValidated,
    PreconditionViolation,
    SeamTooWide,
)
from chaoskit.models.base import EvidenceKind, Exact
from chaoskit.models.certificates import TraceCertificate
from chaoskit.services.sft import Sft
from chaoskit.services.symbolic import (
    EpPoint,
    Number,
    Point,
    ScheduledPoint,
    as_fraction,
    closeness_window,
    dyadic,
    first_difference,
    format_point,
    separation_window,
)
from chaoskit.utils.logging import get_logger, log_function_call

# Initialize logger
logger = get_logger(__name__)

MAX_TRACE_DELTA = Fraction(1, 4)


class PseudoOrbit(BaseModel):
    """Finite list of points; the list continues along the true orbit of its last entry."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    system: Sft
    entries: List[Any] = Field(..., description="EpPoint or ScheduledPoint entries")
    delta: Exact = Field(..., description="Jump tolerance")
    validated: bool = Field(False, description="Set once every jump was checked below delta")

    @property
    def last(self) -> Point:
        return self.entries[-1]


def _agree(x: Point, y: Point, x_start: int, length: int) -> bool:
    """x_{x_start+j} == y_j for j < length."""
    return x.word(x_start, length) == y.word(0, length)


def jump_distance(x: Point, y: Point) -> Optional[Fraction]:
    """d(sigma x, y), exact for eventually periodic points, None otherwise."""
    if isinstance(x, EpPoint) and isinstance(y, EpPoint):
        return dyadic(first_difference(x.shift(1), y))
    return None


@log_function_call
def validate(po: PseudoOrbit) -> bool:
    """
    Check every entry for admissibility and every jump against delta.

    Args:
        po: The pseudo-orbit

    Returns:
        True iff d(sigma x_k, x_{k+1}) < delta for all listed k
    """
    if not po.entries:
        raise PreconditionViolation("a pseudo-orbit needs at least one entry")
    for entry in po.entries:
        po.system.check_admissible(entry)

    window = closeness_window(po.delta)
    for k in range(len(po.entries) - 1):
        if not _agree(po.entries[k], po.entries[k + 1], 1, window):
            logger.debug(f"Jump {k} is not below {po.delta}")
            return False
    po.validated = True
    return True


def shadowing_modulus(s: Optional[Sft], eps: Number) -> Fraction:
    """
    delta = 2^-(m+2) with m the least integer such that 2^-m <= eps.

    Every delta-pseudo-orbit of a one-step SFT is then eps-traced by the
    first-symbol readout. The system is accepted for symmetry with the other
    operations; the modulus does not depend on it.
    """
    eps = as_fraction(eps)
    if not 0 < eps <= 1:
        raise PreconditionViolation("eps must lie in (0, 1]")
    m = separation_window(eps)
    return dyadic(m + 2)


def readout(po: PseudoOrbit) -> Point:
    """z = (x_0)_0 (x_1)_0 ... (x_{N-2})_0 followed by x_{N-1}."""
    heads = tuple(entry.symbol_at(0) for entry in po.entries[:-1])
    last = po.last
    if isinstance(last, EpPoint):
        return EpPoint(
            preperiod=heads + last.preperiod,
            cycle=last.cycle,
            alphabet_size=last.alphabet_size,
        )
    return last.prepend(heads, f"readout[{len(heads)}]+{last.description}")


@log_function_call
def trace(po: PseudoOrbit, eps: Optional[Number] = None) -> TraceCertificate:
    """
    Trace a validated pseudo-orbit.

    Args:
        po: Pseudo-orbit with delta <= 1/4
        eps: Accuracy to certify (defaults to 2*delta)

    Returns:
        TraceCertificate holding the traced point
    """
    delta = po.delta
    if delta > MAX_TRACE_DELTA:
        raise DeltaTooLarge(f"delta {delta} exceeds {MAX_TRACE_DELTA}")
    if not po.validated and not validate(po):
        raise NotValidated(f"pseudo-orbit has a jump not below {delta}")

    z = readout(po)
    po.system.check_admissible(z)

    window = closeness_window(delta)
    bound = dyadic(window + 1)
    epsilon = as_fraction(eps) if eps is not None else 2 * delta
    compare = max(window + 2, closeness_window(epsilon) + 1)

    distances: List[Fraction] = []
    exact = True
    for n, entry in enumerate(po.entries):
        if isinstance(z, EpPoint) and isinstance(entry, EpPoint):
            distances.append(dyadic(first_difference(z.shift(n), entry)))
            continue
        exact = False
        zs, xs = z.word(n, compare), entry.word(0, compare)
        first = next((i for i, (a, b) in enumerate(zip(zs, xs)) if a != b), None)
        # No difference inside the window bounds the distance by 2^-compare
        distances.append(dyadic(first if first is not None else compare))

    max_distance = max(distances)
    certificate = TraceCertificate(
        traced=format_point(z),
        delta=delta,
        epsilon=epsilon,
        entries=len(po.entries),
        distances=distances,
        max_distance=max_distance,
        bound=bound,
        evidence=EvidenceKind.EXACT if exact else EvidenceKind.HORIZON,
        horizon=None if exact else compare,
        verified=max_distance < epsilon,
        point=z,
    )
    logger.info(f"Traced {len(po.entries)} entries: max distance {max_distance}, eps {epsilon}")
    return certificate


@log_function_call
def concat_pseudo_orbit(
    s: Sft,
    segments: Sequence[Tuple[Point, Optional[int]]],
    delta: Number,
) -> PseudoOrbit:
    """
    Concatenate orbit segments p, sigma p, ..., sigma^{len-1} p.

    The final segment contributes its point and the tail rule; segments of
    length 0 are skipped.

    Raises:
        SeamTooWide: when some seam jump is not below delta
    """
    delta = as_fraction(delta)
    kept = [(p, n) for i, (p, n) in enumerate(segments) if i == len(segments) - 1 or n]
    if not kept:
        raise PreconditionViolation("no segments to concatenate")

    window = closeness_window(delta)
    entries: List[Point] = []
    for index, (point, length) in enumerate(kept):
        final = index == len(kept) - 1
        if entries:
            previous = entries[-1]
            if not _agree(previous, point, 1, window):
                distance = jump_distance(previous, point)
                raise SeamTooWide(index - 1, distance if distance is not None else f">= {delta}", delta)
        if final:
            entries.append(point)
            break
        if not isinstance(point, EpPoint):
            raise PreconditionViolation("only the final segment may be a scheduled point")
        entries.extend(point.shift(j) for j in range(length))

    po = PseudoOrbit(system=s, entries=entries, delta=delta)
    if not validate(po):
        raise NotValidated("concatenated segments do not form a pseudo-orbit")
    return po

"""
Exception hierarchy for chaoskit.
"""

from typing import Optional


class ChaosKitError(Exception):
    """Base class for every error raised by chaoskit."""


class PreconditionViolation(ChaosKitError, ValueError):
    """An operation was called outside its documented domain."""


class AlphabetMismatch(PreconditionViolation):
    """Two points (or a point and a system) use different alphabets."""


class InadmissiblePoint(ChaosKitError):
    """A point contains a transition forbidden in the system."""

    def __init__(self, message: str, position: Optional[int] = None):
        super().__init__(message)
        self.position = position


class EmptySubshift(ChaosKitError):
    """No symbol survives essentialization."""


class HypothesisFailed(ChaosKitError):
    """A structural hypothesis on the system does not hold."""


class NotIrreducible(HypothesisFailed):
    """The transition graph is not strongly connected."""


class SingleCycle(HypothesisFailed):
    """The system is a single periodic orbit."""


class NotMixing(HypothesisFailed):
    """The transition graph is irreducible but has period greater than one."""


class NoFixedPoint(HypothesisFailed):
    """The system has no fixed point (no self-loop)."""


class NotValidated(ChaosKitError):
    """A pseudo-orbit has a jump that is not below its tolerance."""


class DeltaTooLarge(ChaosKitError):
    """The pseudo-orbit tolerance is above 1/4."""


class SeamTooWide(ChaosKitError):
    """Two concatenated segments do not meet within the tolerance."""

    def __init__(self, seam: int, distance: object, delta: object):
        super().__init__(f"seam {seam} has jump distance {distance}, not below {delta}")
        self.seam = seam
        self.distance = distance
        self.delta = delta


class WitnessNotFound(ChaosKitError):
    """A construction needed a witness that does not exist in this system."""


class UnknownMap(ChaosKitError):
    """The requested interval map has no known Markov partition."""


class SystemSpecError(ChaosKitError):
    """A system definition could not be compiled."""


class LiteralError(PreconditionViolation):
    """A point, threshold or file literal could not be parsed."""

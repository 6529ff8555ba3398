"""
Base models for chaoskit.
"""

from enum import Enum
from fractions import Fraction
from typing import Annotated, Any, List, Optional

from pydantic import BaseModel, Field, PlainSerializer, PlainValidator, WithJsonSchema


class EvidenceKind(str, Enum):
    """How a verdict was established."""

    EXACT = "exact"
    HORIZON = "horizon"


class VerdictName(str, Enum):
    """Tuple relations that chaoskit certifies."""

    REGIONALLY_PROXIMAL = "regionally_proximal"
    EPS_ASYMPTOTIC = "eps_asymptotic"
    EPS_DISTAL = "eps_distal"
    LI_YORKE = "li_yorke"
    DIST_SCRAMBLED = "dist_scrambled"
    DC1_PAIR = "dc1_pair"


class BlockMode(str, Enum):
    """Role of a segment inside a block plan."""

    PREFIX = "prefix"
    BRIDGE = "bridge"
    ASYMPTOTIC = "asymptotic"
    DISTAL = "distal"


class Dichotomy(str, Enum):
    """Outcome of the sensitive-or-equicontinuous dichotomy."""

    SENSITIVE = "sensitive"
    PERIODIC = "periodic"


class ChaosKitSettings(BaseModel):
    """Runtime settings."""

    max_horizon: int = Field(2 ** 24, description="Cap on realized-prefix length")
    liminf_tolerance_exponent: int = Field(40, description="A distance below 2^-k counts as a liminf of zero")
    checkpoint_exponents: List[int] = Field(
        default_factory=lambda: list(range(10, 25, 2)),
        description="Default horizon checkpoints 2^k",
    )
    horizon_tolerance: str = Field("1/8", description="HORIZON verdicts accept densities >= 1 - tolerance")
    family_certificate_cap: int = Field(64, description="Sub-tuples certified before sampling")
    workers: int = Field(4, description="Threads used for family certificates")
    log_level: str = Field("INFO", description="Log level name")
    log_file: Optional[str] = Field(None, description="Optional log file")

    def default_checkpoints(self) -> List[int]:
        """Checkpoints 2^k that fit under the horizon cap."""
        return [2 ** k for k in self.checkpoint_exponents if 2 ** k <= self.max_horizon]


def parse_fraction(value: Any) -> Fraction:
    """Exact value of an int, float, Fraction or string (`1/8`, `0.5`, `2^-3`)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("booleans are not numbers here")
    if isinstance(value, str):
        text = value.strip().replace(" ", "")
        if text.startswith("2^"):
            return Fraction(2) ** int(text[2:])
        return Fraction(text)
    if isinstance(value, (int, float)):
        return Fraction(value)
    raise ValueError(f"cannot read {value!r} as a number")


# Exact rational, serialized as a string such as "1/8"
Exact = Annotated[
    Fraction,
    PlainValidator(parse_fraction),
    PlainSerializer(str, return_type=str),
    WithJsonSchema({"type": "string", "examples": ["1/8", "2^-3"]}),
]

"""
Parsing of thresholds, point lists, pseudo-orbit files and system files.
"""

import json
from fractions import Fraction
from pathlib import Path
from typing import List, Sequence, Tuple, Union

from chaoskit.errors import LiteralError, SystemSpecError
from chaoskit.models.systems import SystemSpec
from chaoskit.services.sft import Sft
from chaoskit.services.shadowing import PseudoOrbit
from chaoskit.services.symbolic import EpPoint, as_fraction, parse_point
from chaoskit.services.zoo import catalog, compile_system, parse_spec
from chaoskit.utils.logging import get_logger

# Initialize logger
logger = get_logger(__name__)


def parse_threshold(text: Union[str, int, float, Fraction]) -> Fraction:
    """`2^-3`, `1/8`, `0.125` -> Fraction(1, 8); must be positive."""
    value = as_fraction(text)
    if value <= 0:
        raise LiteralError(f"threshold {text!r} must be positive")
    return value


def parse_points(literals: Sequence[str], alphabet_size: int) -> List[EpPoint]:
    return [parse_point(text, alphabet_size) for text in literals]


def parse_pseudo_orbit(text: str, system: Sft) -> PseudoOrbit:
    """
    Pseudo-orbit file: a `delta=<threshold>` header line followed by one
    point literal per line. Blank lines and `#` comments are skipped.
    """
    lines = [line.split("#", 1)[0].strip() for line in text.splitlines()]
    lines = [line for line in lines if line]
    if not lines or not lines[0].replace(" ", "").startswith("delta="):
        raise LiteralError("pseudo-orbit file must start with a delta=<threshold> line")
    delta = parse_threshold(lines[0].split("=", 1)[1].strip())
    entries = parse_points(lines[1:], system.alphabet_size)
    if not entries:
        raise LiteralError("pseudo-orbit file lists no points")
    return PseudoOrbit(system=system, entries=entries, delta=delta)


def load_pseudo_orbit(path: Union[str, Path], system: Sft) -> PseudoOrbit:
    return parse_pseudo_orbit(Path(path).read_text(encoding="utf-8"), system)


def load_system(source: Union[str, Path]) -> Tuple[str, SystemSpec, Sft]:
    """
    Read a system file (JSON definition) or a zoo name.

    Returns:
        (display name, definition, compiled Sft)
    """
    path = Path(source)
    if path.exists():
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise SystemSpecError(f"{path}: not valid JSON ({e})") from e
        spec = parse_spec(data)
        name = spec.name or path.stem
    else:
        systems = catalog()
        if str(source) not in systems:
            raise SystemSpecError(f"{source}: no such file or zoo system")
        spec = systems[str(source)]
        name = str(source)
    logger.debug(f"Loaded system {name} ({spec.kind})")
    return name, spec, compile_system(spec)

"""
System zoo: compiling system definitions, interval-map ingestion and the catalog.
"""

import math
from fractions import Fraction
from typing import Dict, Optional, Tuple

from pydantic import TypeAdapter, ValidationError

from chaoskit.errors import ChaosKitError, SystemSpecError, UnknownMap
from chaoskit.models.systems import (
    ForbiddenWordsSpec,
    FullShiftSpec,
    MarkovMapSpec,
    MatrixSpec,
    OdometerProductSpec,
    SystemSpec,
)
from chaoskit.services.sft import Sft, essentialize, full_shift, higher_block_recode
from chaoskit.utils.logging import get_logger, log_function_call

# Initialize logger
logger = get_logger(__name__)

ODOMETER_CAVEAT = (
    "the odometer is not an SFT; its depth-{depth} cyclic approximation makes the "
    "second coordinate periodic with period {period}"
)

# Piecewise-linear Markov maps: branches as (x0, x1, y0, y1) on [x0, x1]
MARKOV_MAPS: Dict[str, Tuple[Tuple[Fraction, Fraction, Fraction, Fraction], ...]] = {
    "tent_slope2": (
        (Fraction(0), Fraction(1, 2), Fraction(0), Fraction(1)),
        (Fraction(1, 2), Fraction(1), Fraction(1), Fraction(0)),
    ),
    "doubling": (
        (Fraction(0), Fraction(1, 2), Fraction(0), Fraction(1)),
        (Fraction(1, 2), Fraction(1), Fraction(0), Fraction(1)),
    ),
}
MARKOV_ENTROPY = {"tent_slope2": math.log(2), "doubling": math.log(2)}

_SPEC_ADAPTER = TypeAdapter(SystemSpec)


def parse_spec(data: object) -> SystemSpec:
    """Validate a system definition given as a dict."""
    try:
        return _SPEC_ADAPTER.validate_python(data)
    except ValidationError as e:
        raise SystemSpecError(f"invalid system definition: {e}") from e


def _image(branch: Tuple[Fraction, Fraction, Fraction, Fraction], lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction]:
    x0, x1, y0, y1 = branch
    slope = (y1 - y0) / (x1 - x0)
    ends = (y0 + slope * (lo - x0), y0 + slope * (hi - x0))
    return min(ends), max(ends)


@log_function_call
def ingest_markov_map(name: str, grid: int = 2) -> Sft:
    """
    Transition matrix of a named Markov interval map on a uniform grid.

    Interval i -> j is allowed when the image of interval i overlaps the
    interior of interval j. The grid must refine the branch partition.

    Raises:
        UnknownMap: for a name outside tent_slope2 and doubling
    """
    if name not in MARKOV_MAPS:
        raise UnknownMap(f"no Markov partition known for {name!r}")
    if grid < 2 or grid % 2:
        raise SystemSpecError("grid must be an even number of intervals")

    width = Fraction(1, grid)
    matrix = [[0] * grid for _ in range(grid)]
    for i in range(grid):
        lo, hi = i * width, (i + 1) * width
        branch = next(b for b in MARKOV_MAPS[name] if b[0] <= lo and hi <= b[1])
        image_lo, image_hi = _image(branch, lo, hi)
        for j in range(grid):
            if max(image_lo, j * width) < min(image_hi, (j + 1) * width):
                matrix[i][j] = 1
    labels = [f"I{i}" for i in range(grid)]
    return essentialize(matrix, labels, provenance=f"markov_map({name}, grid {grid})")


def odometer_product(depth: int, symbols: int = 2) -> Sft:
    """
    Full shift on `symbols` symbols times the rotation j -> j+1 on Z / 2^depth.

    Symbol (a, j) has index a * 2^depth + j.
    """
    period = 2 ** depth
    size = symbols * period
    matrix = [[0] * size for _ in range(size)]
    for a in range(symbols):
        for j in range(period):
            for b in range(symbols):
                matrix[a * period + j][b * period + (j + 1) % period] = 1
    labels = [f"{a}:{j}" for a in range(symbols) for j in range(period)]
    return essentialize(matrix, labels, provenance=f"product_with_odometer(depth {depth})")


def compile_system(spec: SystemSpec) -> Sft:
    """
    Compile a system definition into an essential Sft.

    Raises:
        SystemSpecError: when the definition does not describe a nonempty SFT
    """
    try:
        if isinstance(spec, FullShiftSpec):
            return full_shift(spec.symbols)
        if isinstance(spec, MatrixSpec):
            return essentialize(spec.matrix, spec.labels, provenance="matrix")
        if isinstance(spec, ForbiddenWordsSpec):
            sft, _ = higher_block_recode(spec.forbidden, spec.alphabet_size)
            return sft
        if isinstance(spec, OdometerProductSpec):
            return odometer_product(spec.depth, spec.symbols)
        if isinstance(spec, MarkovMapSpec):
            return ingest_markov_map(spec.map, spec.grid)
    except UnknownMap:
        raise
    except (ChaosKitError, ValueError) as e:
        raise SystemSpecError(f"cannot compile {spec.kind}: {e}") from e
    raise SystemSpecError(f"unknown system kind {spec!r}")


def caveat(spec: SystemSpec) -> Optional[str]:
    """Approximation note attached to compiled systems that are not exact presentations."""
    if isinstance(spec, OdometerProductSpec):
        return ODOMETER_CAVEAT.format(depth=spec.depth, period=2 ** spec.depth)
    return None


def reference_entropy(spec: SystemSpec) -> Optional[float]:
    if isinstance(spec, MarkovMapSpec):
        return MARKOV_ENTROPY.get(spec.map)
    return None


def catalog() -> Dict[str, SystemSpec]:
    """Named zoo systems, in a fixed order."""
    return {
        "full_shift_2": FullShiftSpec(name="full_shift_2", symbols=2),
        "full_shift_3": FullShiftSpec(name="full_shift_3", symbols=3),
        "golden_mean": ForbiddenWordsSpec(name="golden_mean", alphabet_size=2, forbidden=["11"]),
        "even_period_cycle": MatrixSpec(name="even_period_cycle", matrix=[[0, 1], [1, 0]]),
        "bipartite_3": MatrixSpec(name="bipartite_3", matrix=[[0, 1, 1], [1, 0, 0], [1, 0, 0]]),
        "two_loops": MatrixSpec(name="two_loops", matrix=[[1, 0], [0, 1]]),
        "odometer_product_3": OdometerProductSpec(name="odometer_product_3", depth=3),
        "tent_slope2": MarkovMapSpec(name="tent_slope2", map="tent_slope2", grid=2),
        "doubling_4": MarkovMapSpec(name="doubling_4", map="doubling", grid=4),
    }


def lookup(name: str) -> SystemSpec:
    systems = catalog()
    if name not in systems:
        raise SystemSpecError(f"unknown zoo system {name!r}; known: {', '.join(systems)}")
    return systems[name]

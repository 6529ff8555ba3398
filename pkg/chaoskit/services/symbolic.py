"""
Symbolic points, the shift metric and exact tail statistics.

Points are one-sided sequences over the alphabet {0, ..., k-1}. Eventually
periodic points (EpPoint) carry exact orbit arithmetic; scheduled points
(ScheduledPoint) are defined by an infinite block plan and realized lazily.
"""

import math
import threading
from array import array
from bisect import bisect_right
from fractions import Fraction
from itertools import combinations
from typing import Any, Callable, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from chaoskit.errors import AlphabetMismatch, LiteralError, PreconditionViolation
from chaoskit.models.base import parse_fraction
from chaoskit.utils.config import get_settings
from chaoskit.utils.logging import get_logger, log_function_call

# Initialize logger
logger = get_logger(__name__)

Word = Tuple[int, ...]
Number = Union[int, float, Fraction, str]


class Alphabet(BaseModel):
    """Alphabet {0, ..., size-1}."""

    model_config = ConfigDict(frozen=True)

    size: int = Field(..., ge=1, description="Number of symbols")

    @property
    def symbols(self) -> range:
        return range(self.size)

    def validate_word(self, word: Iterable[int]) -> Word:
        """Return the word as a tuple, checking every symbol."""
        symbols = tuple(int(s) for s in word)
        for s in symbols:
            if not 0 <= s < self.size:
                raise PreconditionViolation(f"symbol {s} outside alphabet of size {self.size}")
        return symbols


def _as_word(value: Any) -> Word:
    if isinstance(value, str):
        if "." in value:
            return tuple(int(part) for part in value.split(".") if part != "")
        return tuple(int(ch) for ch in value)
    return tuple(int(s) for s in value)


def primitive_root(word: Word) -> Word:
    """Shortest u with word = u^j."""
    n = len(word)
    for p in range(1, n + 1):
        if n % p == 0 and word[:p] * (n // p) == word:
            return word[:p]
    return word


def canonical_form(preperiod: Word, cycle: Word) -> Tuple[Word, Word]:
    """Primitive cycle and minimal preperiod for the sequence preperiod.cycle^inf."""
    if not cycle:
        raise PreconditionViolation("cycle must be nonempty")
    cycle = primitive_root(cycle)
    pre = list(preperiod)
    # Absorb trailing preperiod symbols into the cycle by rotation
    while pre and pre[-1] == cycle[-1]:
        pre.pop()
        cycle = cycle[-1:] + cycle[:-1]
    return tuple(pre), cycle


class EpPoint(BaseModel):
    """Eventually periodic point preperiod . cycle cycle cycle ..."""

    model_config = ConfigDict(frozen=True)

    preperiod: Word = Field((), description="Finite preperiod word")
    cycle: Word = Field(..., description="Nonempty repeating word")
    alphabet_size: int = Field(2, ge=1, description="Alphabet size")

    @model_validator(mode="before")
    @classmethod
    def _canonicalize(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        data = dict(data)
        preperiod = _as_word(data.get("preperiod", ()))
        cycle = _as_word(data.get("cycle", ()))
        size = int(data.get("alphabet_size", 2))
        for s in preperiod + cycle:
            if not 0 <= s < size:
                raise ValueError(f"symbol {s} outside alphabet of size {size}")
        data["preperiod"], data["cycle"] = canonical_form(preperiod, cycle)
        return data

    @classmethod
    def of(cls, preperiod: Any, cycle: Any, alphabet_size: int = 2) -> "EpPoint":
        return cls(preperiod=preperiod, cycle=cycle, alphabet_size=alphabet_size)

    @classmethod
    def from_word(cls, word: Sequence[int], alphabet_size: int = 2) -> "EpPoint":
        """A point whose first len(word) symbols spell the word."""
        word = tuple(word)
        if not word:
            raise PreconditionViolation("word must be nonempty")
        return cls(preperiod=word, cycle=word[-1:], alphabet_size=alphabet_size)

    @classmethod
    def constant(cls, symbol: int, alphabet_size: int = 2) -> "EpPoint":
        return cls(preperiod=(), cycle=(symbol,), alphabet_size=alphabet_size)

    @property
    def is_periodic(self) -> bool:
        return not self.preperiod

    def symbol_at(self, i: int) -> int:
        if i < 0:
            raise PreconditionViolation("index must be nonnegative")
        p = len(self.preperiod)
        if i < p:
            return self.preperiod[i]
        return self.cycle[(i - p) % len(self.cycle)]

    def word(self, start: int, length: int) -> Word:
        """Symbols start .. start+length-1."""
        if start < 0 or length < 0:
            raise PreconditionViolation("start and length must be nonnegative")
        out = list(self.preperiod[start:start + length])
        need = length - len(out)
        if need > 0:
            p = len(self.preperiod)
            period = len(self.cycle)
            phase = (max(start, p) - p) % period
            rotated = self.cycle[phase:] + self.cycle[:phase]
            out.extend((rotated * (need // period + 1))[:need])
        return tuple(out)

    def shift(self, k: int = 1) -> "EpPoint":
        """sigma^k of the point, in canonical form."""
        if k < 0:
            raise PreconditionViolation("shift must be nonnegative")
        p = len(self.preperiod)
        if k <= p:
            return EpPoint(preperiod=self.preperiod[k:], cycle=self.cycle, alphabet_size=self.alphabet_size)
        phase = (k - p) % len(self.cycle)
        return EpPoint(
            preperiod=(),
            cycle=self.cycle[phase:] + self.cycle[:phase],
            alphabet_size=self.alphabet_size,
        )

    def realize(self, length: int) -> np.ndarray:
        """First `length` symbols as a numpy array."""
        pre = np.asarray(self.preperiod[:length], dtype=np.int32)
        rest = max(0, length - len(pre))
        return np.concatenate([pre, np.resize(np.asarray(self.cycle, dtype=np.int32), rest)])

    def literal(self) -> str:
        return format_point(self)

    def __str__(self) -> str:
        return self.literal()


class PlanBlock(BaseModel):
    """Block `length` symbols of `source` read from `offset`."""

    model_config = ConfigDict(frozen=True)

    source: EpPoint
    offset: int = Field(0, ge=0)
    length: int = Field(..., ge=1)

    def symbols(self) -> Word:
        return self.source.word(self.offset, self.length)


class ScheduledPoint:
    """
    A point defined by an infinite block plan.

    The plan maps k to the k-th block; the point is the concatenation of all
    blocks. Block boundaries are computed from the plan lengths alone and
    symbols are realized only as far as they are read. The cache is guarded
    by a lock so a point can be read from several threads.
    """

    def __init__(
        self,
        plan: Callable[[int], PlanBlock],
        alphabet_size: int,
        description: str = "scheduled",
        plan_ref: Optional[Tuple[Any, int]] = None,
    ):
        self._plan = plan
        self.alphabet_size = alphabet_size
        self.description = description
        # (BlockPlan, coordinate) when the point comes from a tuple plan
        self.plan_ref = plan_ref
        self._symbols = array("B" if alphabet_size <= 256 else "I")
        self._block_ends: List[int] = []
        self._lock = threading.RLock()

    def __repr__(self) -> str:
        return f"ScheduledPoint({self.description!r})"

    def _ensure_block_ends(self, count: int) -> None:
        with self._lock:
            while len(self._block_ends) < count:
                k = len(self._block_ends)
                previous = self._block_ends[-1] if self._block_ends else 0
                self._block_ends.append(previous + self._plan(k).length)

    def _block_index(self, position: int) -> int:
        """Index of the block holding `position`."""
        with self._lock:
            while not self._block_ends or self._block_ends[-1] <= position:
                self._ensure_block_ends(len(self._block_ends) + 1)
            return bisect_right(self._block_ends, position)

    def _extend_to(self, n: int) -> None:
        if n <= len(self._symbols):
            return
        cap = get_settings().max_horizon
        if n > cap + 1024:
            raise PreconditionViolation(f"realizing {n} symbols exceeds the horizon cap {cap}")
        with self._lock:
            while len(self._symbols) < n:
                position = len(self._symbols)
                k = self._block_index(position)
                block = self._plan(k)
                start = self._block_ends[k] - block.length
                take = min(self._block_ends[k], n) - position
                symbols = block.source.word(block.offset + position - start, take)
                if max(symbols) >= self.alphabet_size:
                    raise AlphabetMismatch(f"block {k} leaves the alphabet of size {self.alphabet_size}")
                self._symbols.extend(symbols)

    def symbol_at(self, i: int) -> int:
        if i < 0:
            raise PreconditionViolation("index must be nonnegative")
        self._extend_to(i + 1)
        return self._symbols[i]

    def word(self, start: int, length: int) -> Word:
        self._extend_to(start + length)
        return tuple(self._symbols[start:start + length])

    def realize(self, length: int) -> np.ndarray:
        """First `length` symbols as a numpy array."""
        self._extend_to(length)
        return np.asarray(self._symbols[:length], dtype=np.int32)

    def block(self, k: int) -> PlanBlock:
        return self._plan(k)

    def block_end(self, k: int) -> int:
        """Index one past the last symbol of block k."""
        self._ensure_block_ends(k + 1)
        return self._block_ends[k]

    def prepend(self, word: Sequence[int], description: Optional[str] = None) -> "ScheduledPoint":
        """The point word . self."""
        word = tuple(word)
        if not word:
            return self
        head = PlanBlock(source=EpPoint.from_word(word, self.alphabet_size), length=len(word))
        plan = self._plan

        def shifted_plan(k: int) -> PlanBlock:
            return head if k == 0 else plan(k - 1)

        return ScheduledPoint(
            shifted_plan,
            self.alphabet_size,
            description or f"{format_word(word)}+{self.description}",
        )

    def literal(self) -> str:
        return self.description


Point = Union[EpPoint, ScheduledPoint]


# ---------------------------------------------------------------------------
# Literals
# ---------------------------------------------------------------------------

def format_word(word: Sequence[int]) -> str:
    if any(s > 9 for s in word):
        return ".".join(str(s) for s in word)
    return "".join(str(s) for s in word)


def format_point(point: Point) -> str:
    """`u(w)` literal for eventually periodic points, the plan description otherwise."""
    if isinstance(point, EpPoint):
        sep = "." if point.alphabet_size > 10 else ""
        pre = sep.join(str(s) for s in point.preperiod)
        cyc = sep.join(str(s) for s in point.cycle)
        return f"{pre}({cyc})"
    return point.description


def parse_point(text: str, alphabet_size: int = 2) -> EpPoint:
    """Parse `u(w)`; symbols are digits, or dot-separated integers."""
    text = text.strip()
    if not text.endswith(")") or "(" not in text:
        raise LiteralError(f"point literal {text!r} is not of the form u(w)")
    head, _, rest = text.partition("(")
    body = rest[:-1]
    try:
        return EpPoint(preperiod=_as_word(head), cycle=_as_word(body), alphabet_size=alphabet_size)
    except (ValueError, PreconditionViolation) as e:
        raise LiteralError(f"point literal {text!r}: {e}") from e


# ---------------------------------------------------------------------------
# Metric
# ---------------------------------------------------------------------------

def as_fraction(value: Number) -> Fraction:
    """Exact value of a threshold given as int, float, Fraction or string (`2^-3`, `1/8`)."""
    try:
        return parse_fraction(value)
    except (ValueError, ZeroDivisionError) as e:
        raise LiteralError(f"cannot read {value!r} as a number") from e


def dyadic(exponent: Optional[int]) -> Fraction:
    """2^-exponent; None stands for distance zero."""
    if exponent is None:
        return Fraction(0)
    return Fraction(1, 2 ** exponent)


def closeness_window(t: Number) -> int:
    """Least g >= 0 with 2^-g < t: d(x,y) < t iff x, y agree on indices 0..g-1."""
    t = as_fraction(t)
    if t <= 0:
        raise PreconditionViolation("threshold must be positive")
    g = 0
    while Fraction(1, 2 ** g) >= t:
        g += 1
    return g


def separation_window(delta: Number) -> int:
    """Least g >= 0 with 2^-g <= delta: d(x,y) > delta iff x, y differ somewhere in 0..g-1."""
    delta = as_fraction(delta)
    if delta <= 0:
        raise PreconditionViolation("threshold must be positive")
    g = 0
    while Fraction(1, 2 ** g) > delta:
        g += 1
    return g


def _check_alphabets(points: Sequence[Point]) -> None:
    sizes = {p.alphabet_size for p in points}
    if len(sizes) > 1:
        raise AlphabetMismatch(f"points use different alphabets: {sorted(sizes)}")


def first_difference(x: Point, y: Point, start: int = 0) -> Optional[int]:
    """
    Least index i >= start with x_i != y_i, or None if the tails agree.

    Exact for two eventually periodic points; for scheduled points the scan
    stops at the horizon cap.
    """
    _check_alphabets([x, y])
    if isinstance(x, EpPoint) and isinstance(y, EpPoint):
        xs, ys = x.shift(start), y.shift(start)
        if xs == ys:
            return None
        bound = (
            len(xs.preperiod) + len(ys.preperiod)
            + math.lcm(len(xs.cycle), len(ys.cycle)) + 1
        )
        for i, (a, b) in enumerate(zip(xs.word(0, bound), ys.word(0, bound))):
            if a != b:
                return start + i
        raise AssertionError("distinct eventually periodic points agree on the comparison window")

    cap = get_settings().max_horizon
    pos, chunk = start, 64
    while pos < cap:
        length = min(chunk, cap - pos)
        wx, wy = x.word(pos, length), y.word(pos, length)
        for i, (a, b) in enumerate(zip(wx, wy)):
            if a != b:
                return pos + i
        pos += length
        chunk *= 2
    logger.debug(f"No difference found before the horizon cap {cap}")
    return None


def dist(x: Point, y: Point) -> Fraction:
    """Shift metric d(x,y) = 2^-k, k the first index where x and y differ."""
    k = first_difference(x, y)
    return dyadic(k)


def distance_at(x: Point, y: Point, k: int) -> Fraction:
    """d(sigma^k x, sigma^k y)."""
    f = first_difference(x, y, k)
    return dyadic(None if f is None else f - k)


def tuple_diameter(points: Sequence[Point], k: int = 0) -> Fraction:
    """Largest pairwise distance of the k-shifted points."""
    if len(points) < 2:
        raise PreconditionViolation("a tuple needs at least two points")
    _check_alphabets(points)
    return max(distance_at(x, y, k) for x, y in combinations(points, 2))


def realize(points: Sequence[Point], length: int) -> np.ndarray:
    """Realized prefixes as an array of shape (len(points), length)."""
    if not points:
        return np.zeros((0, length), dtype=np.int32)
    return np.vstack([p.realize(length) for p in points])


# ---------------------------------------------------------------------------
# Exact tail statistics
# ---------------------------------------------------------------------------

class JointTailStats(BaseModel):
    """
    Pairwise distances of an eventually periodic tuple over one joint cycle.

    rows[t][p] is the distance exponent of pair p at time preperiod + t (None
    for distance zero); pairs are listed in lexicographic order.
    """

    preperiod: int = Field(..., description="Joint preperiod P")
    period: int = Field(..., description="Joint period L")
    pairs: List[Tuple[int, int]] = Field(..., description="Index pairs i<j")
    rows: List[List[Optional[int]]] = Field(..., description="Distance exponents per tail time")

    def distances(self, t: int) -> List[Fraction]:
        return [dyadic(e) for e in self.rows[t]]

    def diameters(self) -> List[Fraction]:
        return [max(self.distances(t)) for t in range(self.period)]

    def min_distances(self) -> List[Fraction]:
        return [min(self.distances(t)) for t in range(self.period)]

    def limsup_diameter(self) -> Fraction:
        return max(self.diameters())

    def liminf_min_distance(self) -> Fraction:
        return min(self.min_distances())

    def limsup_pair(self, pair: int) -> Fraction:
        return max(dyadic(row[pair]) for row in self.rows)

    def liminf_pair(self, pair: int) -> Fraction:
        return min(dyadic(row[pair]) for row in self.rows)

    def close_fraction(self, t: Number, pair: Optional[int] = None) -> Fraction:
        """Fraction of cycle times where the pair (or every pair) is closer than t."""
        t = as_fraction(t)
        hits = 0
        for row in self.rows:
            values = [row[pair]] if pair is not None else row
            if all(dyadic(e) < t for e in values):
                hits += 1
        return Fraction(hits, self.period)

    def separated_fraction(self, delta: Number) -> Fraction:
        """Fraction of cycle times where every pair is farther than delta."""
        delta = as_fraction(delta)
        hits = sum(1 for row in self.rows if all(dyadic(e) > delta for e in row))
        return Fraction(hits, self.period)


@log_function_call
def joint_tail_stats(points: Sequence[EpPoint]) -> JointTailStats:
    """
    Exact tail record for a tuple of eventually periodic points.

    Every limsup/liminf of a pairwise-distance functional over k -> infinity is
    the max/min of that functional over the rows.
    """
    if not points:
        raise PreconditionViolation("empty tuple")
    if not all(isinstance(p, EpPoint) for p in points):
        raise PreconditionViolation("joint_tail_stats needs eventually periodic points")
    _check_alphabets(points)

    preperiod = max(len(p.preperiod) for p in points)
    period = math.lcm(*(len(p.cycle) for p in points))
    pairs = list(combinations(range(len(points)), 2))

    rows: List[List[Optional[int]]] = []
    shifted = [p.shift(preperiod) for p in points]
    for t in range(period):
        row = []
        for i, j in pairs:
            f = first_difference(shifted[i], shifted[j], t)
            row.append(None if f is None else f - t)
        rows.append(row)

    logger.debug(f"Joint tail: preperiod={preperiod} period={period} pairs={len(pairs)}")
    return JointTailStats(preperiod=preperiod, period=period, pairs=pairs, rows=rows)


def min_separation(points: Sequence[EpPoint]) -> Fraction:
    """Least pairwise distance over all times k >= 0 of an eventually periodic tuple."""
    stats = joint_tail_stats(points)
    head = [
        min(distance_at(x, y, k) for x, y in combinations(points, 2))
        for k in range(stats.preperiod)
    ]
    return min([stats.liminf_min_distance()] + head)

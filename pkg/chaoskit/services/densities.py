"""
Counting hit times of closeness and separation predicates.

With the 2^-k metric both predicates only look at a window of symbols:
a tuple is t-close at time j iff all coordinates agree on [j, j+h), and
delta-separated iff every pair differs somewhere in [j, j+s). Counts are
computed three ways: by sliding windows over realized prefixes (numpy), in
closed form for eventually periodic tuples, and segment by segment for block
plans.
"""

import math
from itertools import combinations
from typing import List, Literal, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from chaoskit.errors import PreconditionViolation
from chaoskit.services.symbolic import (
    EpPoint,
    Number,
    Point,
    closeness_window,
    realize,
    separation_window,
)
from chaoskit.utils.config import get_settings
from chaoskit.utils.logging import get_logger

# Initialize logger
logger = get_logger(__name__)


class HitRule(BaseModel):
    """Window predicate evaluated at every time j."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["close", "separated"]
    window: int = Field(..., ge=0)
    coords: Optional[Tuple[int, ...]] = Field(None, description="Coordinates the rule looks at")

    def on(self, coords: Sequence[int]) -> "HitRule":
        return HitRule(kind=self.kind, window=self.window, coords=tuple(coords))


def close_rule(t: Number) -> HitRule:
    """All pairs at distance < t."""
    return HitRule(kind="close", window=closeness_window(t))


def separated_rule(delta: Number) -> HitRule:
    """All pairs at distance > delta."""
    return HitRule(kind="separated", window=separation_window(delta))


def _window_sums(flags: np.ndarray, window: int) -> np.ndarray:
    c = np.concatenate([[0], np.cumsum(flags, dtype=np.int64)])
    return c[window:] - c[:-window]


def window_hits(rows: np.ndarray, rule: HitRule) -> np.ndarray:
    """
    Evaluate the rule on realized rows.

    Args:
        rows: Array of shape (n, length)
        rule: The predicate

    Returns:
        Boolean array with one entry per time j in range(length - window + 1)
    """
    if rule.coords is not None:
        rows = rows[list(rule.coords)]
    n, length = rows.shape
    w = rule.window
    positions = length - w + 1
    if positions <= 0:
        return np.zeros(0, dtype=bool)
    if w == 0:
        return np.full(positions, rule.kind == "close")
    if rule.kind == "close":
        mismatch = (rows != rows[0]).any(axis=0)
        return _window_sums(mismatch, w) == 0
    hits = np.ones(positions, dtype=bool)
    for a, b in combinations(range(n), 2):
        hits &= _window_sums(rows[a] != rows[b], w) > 0
    return hits


def horizon_counts(points: Sequence[Point], rule: HitRule, checkpoints: Sequence[int]) -> List[int]:
    """Brute-force counts #{j < N : rule holds at j} for each checkpoint N."""
    if not checkpoints:
        return []
    top = max(checkpoints)
    rows = realize(points, top + max(rule.window - 1, 0))
    hits = window_hits(rows, rule)[:top]
    cumulative = np.cumsum(hits, dtype=np.int64)
    return [int(cumulative[n - 1]) if n > 0 else 0 for n in checkpoints]


def eventually_periodic_count(sources: Sequence[EpPoint], rule: HitRule, length: int) -> int:
    """Exact #{0 <= j < length : rule holds at j} for eventually periodic sources."""
    if length <= 0:
        return 0
    preperiod = max(len(p.preperiod) for p in sources)
    period = math.lcm(*(len(p.cycle) for p in sources))
    span = preperiod + period
    rows = realize(sources, span + rule.window - 1) if rule.window else realize(sources, span)
    hits = window_hits(rows, rule)[:span]
    if length <= span:
        return int(hits[:length].sum())
    cycles, remainder = divmod(length - preperiod, period)
    head = int(hits[:preperiod].sum())
    cycle = int(hits[preperiod:].sum())
    tail = int(hits[preperiod:preperiod + remainder].sum())
    return head + cycles * cycle + tail


def plan_count(plan, rule: HitRule, n: int) -> int:
    """
    Exact #{0 <= j < n : rule holds at j} for the coordinates of a block plan.

    Times whose window stays inside one segment are counted in closed form;
    the few windows that cross a segment boundary are evaluated directly.
    """
    w = rule.window
    total = 0
    for segment in plan.segments_before(n):
        a, b = segment.start, segment.end
        inner_end = min(n, b - w + 1) if w else min(n, b)
        if inner_end > a:
            total += eventually_periodic_count(segment.shifted_sources(), rule, inner_end - a)
        lo, hi = max(a, b - w + 1), min(b, n)
        if w and lo < hi:
            rows = plan.rows(lo, hi - lo + w - 1)
            total += int(window_hits(rows, rule).sum())
    return total


def common_plan(points: Sequence[Point]):
    """(plan, coordinates) when every point is a coordinate of one block plan."""
    refs = [getattr(p, "plan_ref", None) for p in points]
    if not refs or any(r is None for r in refs):
        return None
    plan = refs[0][0]
    if any(r[0] is not plan for r in refs):
        return None
    return plan, tuple(r[1] for r in refs)


def count_hits(points: Sequence[Point], rule: HitRule, n: int) -> int:
    """Exact when possible (eventually periodic or plan-backed), realized otherwise."""
    if n < 0:
        raise PreconditionViolation("horizon must be nonnegative")
    if all(isinstance(p, EpPoint) for p in points):
        return eventually_periodic_count(points, rule, n)
    shared = common_plan(points)
    if shared is not None:
        plan, coords = shared
        return plan_count(plan, rule.on(coords), n)
    cap = get_settings().max_horizon
    if n > cap:
        raise PreconditionViolation(f"horizon {n} exceeds the cap {cap}")
    return horizon_counts(points, rule, [n])[0]


def agreement_lengths(x: np.ndarray, y: np.ndarray, positions: int, cap: int) -> np.ndarray:
    """
    For j < positions, the number of leading symbols on which the rows agree
    from time j, capped at `cap`. The rows must hold positions + cap symbols.
    """
    diff = x[:positions + cap] != y[:positions + cap]
    index = np.where(diff, np.arange(diff.size), diff.size)
    nearest = np.minimum.accumulate(index[::-1])[::-1]
    return np.minimum(nearest[:positions] - np.arange(positions), cap)

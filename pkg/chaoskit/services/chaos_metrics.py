"""
Chaos quantifiers and tuple relations as certifiers.

Tuples of eventually periodic points are decided exactly from their joint
tail. Tuples read off one block plan are decided exactly from the plan
structure, with exact hit counts at block ends kept as replayable evidence.
Any other tuple gets a HORIZON verdict computed on realized prefixes.
"""

from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field, model_validator

from chaoskit.errors import PreconditionViolation
from chaoskit.models.base import Dichotomy, EvidenceKind, VerdictName
from chaoskit.models.certificates import (
    DensityEstimate,
    DensityRow,
    DichotomyVerdict,
    DistributionProfile,
    PhiLimits,
    RpWitness,
    SensitivityWitness,
    TupleCertificate,
    Verdict,
)
from chaoskit.services.block_plan import BlockPlan, schedule_dominates
from chaoskit.services.densities import (
    HitRule,
    agreement_lengths,
    close_rule,
    common_plan,
    count_hits,
    horizon_counts,
    plan_count,
    separated_rule,
)
from chaoskit.services.sft import (
    Sft,
    bridge_word,
    cycle_through,
    fixed_points,
    is_single_cycle,
    require_irreducible,
)
from chaoskit.services.symbolic import (
    EpPoint,
    Number,
    Point,
    as_fraction,
    closeness_window,
    dist,
    dyadic,
    first_difference,
    format_point,
    format_word,
    joint_tail_stats,
    min_separation,
    realize,
    separation_window,
    tuple_diameter,
    _check_alphabets,
)
from chaoskit.utils.config import get_settings
from chaoskit.utils.logging import get_logger, log_function_call

# Initialize logger
logger = get_logger(__name__)

DEFAULT_T_GRID = (Fraction(1, 2), Fraction(1, 16), Fraction(1, 2 ** 8), Fraction(1, 2 ** 16))
SENSITIVITY_CONSTANT = Fraction(1, 2)


def _literals(points: Sequence[Point]) -> List[str]:
    return [format_point(p) for p in points]


def _all_periodic(points: Sequence[Point]) -> bool:
    return all(isinstance(p, EpPoint) for p in points)


def _checkpoints(checkpoints: Optional[Sequence[int]]) -> List[int]:
    values = sorted(set(checkpoints)) if checkpoints else get_settings().default_checkpoints()
    if not values or values[0] < 2:
        raise PreconditionViolation("checkpoints must be at least 2")
    return values


def _tolerance() -> Fraction:
    return as_fraction(get_settings().horizon_tolerance)


def _plan_coords_differ(plan: BlockPlan, a: int, b: int) -> bool:
    prefix = plan.segment(0)
    if prefix.sources[a] != prefix.sources[b]:
        return True
    return any(plan.body(2 * j).sources[a] != plan.body(2 * j).sources[b] for j in range(1, len(plan.groups) + 1))


def _require_distinct(points: Sequence[Point]) -> None:
    shared = common_plan(points)
    for a, b in combinations(range(len(points)), 2):
        if shared is not None:
            plan, coords = shared
            same = coords[a] == coords[b] or not _plan_coords_differ(plan, coords[a], coords[b])
        else:
            same = first_difference(points[a], points[b]) is None
        if same:
            raise PreconditionViolation(f"points {a} and {b} coincide")


def _require_tuple(points: Sequence[Point]) -> None:
    if len(points) < 2:
        raise PreconditionViolation("a tuple needs at least two points")
    _check_alphabets(points)


# ---------------------------------------------------------------------------
# Distribution functions and densities
# ---------------------------------------------------------------------------

@log_function_call
def phi(x: Point, y: Point, n: int, t: Number) -> Fraction:
    """
    Phi^n_xy(t) = (1/n) #{0 <= i < n : d(sigma^i x, sigma^i y) < t}.

    Args:
        x, y: The pair
        n: Horizon (n >= 1)
        t: Threshold (t > 0)

    Returns:
        Exact rational value
    """
    if n < 1:
        raise PreconditionViolation("horizon must be at least 1")
    rule = close_rule(t)
    _check_alphabets([x, y])
    return Fraction(count_hits([x, y], rule, n), n)


def phi_limits_exact(x: EpPoint, y: EpPoint, t: Number) -> PhiLimits:
    """The limit of Phi^n(t): the fraction of joint-cycle times with distance < t."""
    if not (isinstance(x, EpPoint) and isinstance(y, EpPoint)):
        raise PreconditionViolation("exact limits need eventually periodic points")
    t = as_fraction(t)
    if t <= 0:
        raise PreconditionViolation("threshold must be positive")
    value = joint_tail_stats([x, y]).close_fraction(t, pair=0)
    return PhiLimits(threshold=t, liminf=value, limsup=value, exists=True)


def distribution_profile(
    x: Point,
    y: Point,
    thresholds: Sequence[Number],
    horizons: Sequence[int],
) -> DistributionProfile:
    """Phi^n(t) over a grid, with exact limits for eventually periodic pairs."""
    ts = sorted(as_fraction(t) for t in thresholds)
    values = [[phi(x, y, n, t) for n in horizons] for t in ts]
    limits = None
    if _all_periodic([x, y]):
        limits = [phi_limits_exact(x, y, t).limsup for t in ts]
    return DistributionProfile(
        points=_literals([x, y]),
        thresholds=ts,
        horizons=list(horizons),
        values=values,
        limits=limits,
    )


class PeriodicHitSet(BaseModel):
    """Indices i >= start with i mod period in residues."""

    residues: List[int]
    period: int = Field(..., ge=1)
    start: int = Field(0, ge=0)

    def _upto(self, n: int) -> int:
        classes = sorted({r % self.period for r in self.residues})
        full, rest = divmod(n, self.period)
        return full * len(classes) + sum(1 for r in classes if r < rest)

    def count(self, n: int) -> int:
        return max(0, self._upto(n) - self._upto(min(n, self.start)))

    def exact_density(self) -> Fraction:
        return Fraction(len({r % self.period for r in self.residues}), self.period)


class GeometricBlockHitSet(BaseModel):
    """Union over k >= 0 of [alpha*ratio^k, beta*ratio^k)."""

    alpha: int = Field(..., ge=1)
    beta: int
    ratio: int = Field(..., ge=2)

    @model_validator(mode="after")
    def _check_blocks(self) -> "GeometricBlockHitSet":
        if not self.alpha < self.beta <= self.alpha * self.ratio:
            raise ValueError("blocks need alpha < beta <= alpha * ratio")
        return self

    def count(self, n: int) -> int:
        total, k = 0, 0
        while self.alpha * self.ratio ** k < n:
            lo, hi = self.alpha * self.ratio ** k, self.beta * self.ratio ** k
            total += min(hi, n) - lo
            k += 1
        return total

    def exact_density(self) -> Fraction:
        # Limit of the densities at the block ends beta * ratio^k
        return Fraction((self.beta - self.alpha) * self.ratio, (self.ratio - 1) * self.beta)

    def block_ends(self, blocks: int) -> List[int]:
        return [self.beta * self.ratio ** k for k in range(blocks)]


class FiniteHitSet(BaseModel):
    """Explicit indices observed up to a horizon."""

    indices: List[int]
    horizon: int = Field(..., ge=1)

    def count(self, n: int) -> int:
        return sum(1 for i in set(self.indices) if 0 <= i < n)


HitSet = Union[PeriodicHitSet, GeometricBlockHitSet, FiniteHitSet]


@log_function_call
def upper_density(hits: HitSet, checkpoints: Optional[Sequence[int]] = None) -> DensityEstimate:
    """
    limsup (1/n) #(F n [0, n)).

    Exact for periodic and geometric block sets; a finite set observed up to
    a horizon gives a HORIZON estimate at its last checkpoint.
    """
    if isinstance(hits, PeriodicHitSet):
        points = list(checkpoints) if checkpoints else [hits.period * 2 ** k for k in range(1, 7)]
        value, evidence = hits.exact_density(), EvidenceKind.EXACT
    elif isinstance(hits, GeometricBlockHitSet):
        points = list(checkpoints) if checkpoints else hits.block_ends(8)
        value, evidence = hits.exact_density(), EvidenceKind.EXACT
    else:
        points = list(checkpoints) if checkpoints else [hits.horizon]
        value, evidence = Fraction(hits.count(points[-1]), points[-1]), EvidenceKind.HORIZON
    return DensityEstimate(
        value=value,
        evidence=evidence,
        checkpoints=points,
        densities=[Fraction(hits.count(n), n) for n in points],
    )


# ---------------------------------------------------------------------------
# Horizon evaluation
# ---------------------------------------------------------------------------

def _tail_agreements(points: Sequence[Point], n: int, cap: int) -> np.ndarray:
    """Agreement lengths (capped) for every pair at times n//2 .. n-1; shape (pairs, times)."""
    if n > get_settings().max_horizon:
        raise PreconditionViolation(f"horizon {n} exceeds the cap {get_settings().max_horizon}")
    rows = realize(points, n + cap)
    lo = n // 2
    return np.vstack([
        agreement_lengths(rows[a][lo:], rows[b][lo:], n - lo, cap)
        for a, b in combinations(range(len(points)), 2)
    ])


# ---------------------------------------------------------------------------
# Asymptotic, distal and Li-Yorke relations
# ---------------------------------------------------------------------------

@log_function_call
def is_eps_asymptotic(
    points: Sequence[Point],
    eps: Number,
    checkpoints: Optional[Sequence[int]] = None,
) -> TupleCertificate:
    """limsup_k diam(sigma^k x_1, ..., sigma^k x_n) < eps."""
    eps = as_fraction(eps)
    if not 0 < eps <= 1:
        raise PreconditionViolation("eps must lie in (0, 1]")
    _require_tuple(points)

    if _all_periodic(points):
        value = joint_tail_stats(points).limsup_diameter()
        verdict = Verdict(
            name=VerdictName.EPS_ASYMPTOTIC, holds=value < eps, parameter=eps,
            evidence=EvidenceKind.EXACT, value=value, note="limsup diameter over the joint cycle",
        )
    else:
        n = _checkpoints(checkpoints)[-1]
        cap = closeness_window(eps) + 1
        agree = _tail_agreements(points, n, cap)
        value = dyadic(int(agree.min()))
        verdict = Verdict(
            name=VerdictName.EPS_ASYMPTOTIC, holds=value < eps, parameter=eps,
            evidence=EvidenceKind.HORIZON, horizon=n, value=value,
            note=f"largest diameter over times {n // 2}..{n - 1}",
        )
    return TupleCertificate(points=_literals(points), verdicts=[verdict])


@log_function_call
def is_eps_distal(
    points: Sequence[Point],
    eps: Number,
    checkpoints: Optional[Sequence[int]] = None,
) -> TupleCertificate:
    """liminf_k min_{i<j} d(sigma^k x_i, sigma^k x_j) > eps."""
    eps = as_fraction(eps)
    if not 0 < eps < 1:
        raise PreconditionViolation("eps must lie in (0, 1)")
    _require_tuple(points)

    if _all_periodic(points):
        value = joint_tail_stats(points).liminf_min_distance()
        verdict = Verdict(
            name=VerdictName.EPS_DISTAL, holds=value > eps, parameter=eps,
            evidence=EvidenceKind.EXACT, value=value, note="liminf of the least pair distance over the joint cycle",
        )
    else:
        n = _checkpoints(checkpoints)[-1]
        cap = separation_window(eps) + 1
        agree = _tail_agreements(points, n, cap)
        value = dyadic(int(agree.max()))
        verdict = Verdict(
            name=VerdictName.EPS_DISTAL, holds=value > eps, parameter=eps,
            evidence=EvidenceKind.HORIZON, horizon=n, value=value,
            note=f"smallest pair distance over times {n // 2}..{n - 1}",
        )
    return TupleCertificate(points=_literals(points), verdicts=[verdict])


def _plan_li_yorke(plan: BlockPlan, a: int, b: int) -> Verdict:
    asymptotic_bodies = all(
        plan.body(k).sources[a] == plan.body(k).sources[b]
        for k in range(1, 2 * len(plan.groups) + 2, 2)
    )
    separations = [
        min_separation([plan.body(k).sources[a], plan.body(k).sources[b]])
        for k in range(2, 2 * len(plan.groups) + 1, 2)
        if plan.body(k).sources[a] != plan.body(k).sources[b]
    ]
    limsup_bound = max(separations) if separations else Fraction(0)
    holds = asymptotic_bodies and limsup_bound > 0
    return Verdict(
        name=VerdictName.LI_YORKE,
        holds=holds,
        evidence=EvidenceKind.EXACT,
        value=limsup_bound,
        note="ASYMPTOTIC bodies of unbounded length force liminf 0; "
             "recurring DISTAL bodies keep the pair at least `value` apart",
    )


@log_function_call
def is_li_yorke_pair(
    x: Point,
    y: Point,
    checkpoints: Optional[Sequence[int]] = None,
    eps: Optional[Number] = None,
) -> TupleCertificate:
    """
    liminf d(sigma^n x, sigma^n y) = 0 and limsup d(sigma^n x, sigma^n y) > 0.

    On HORIZON evidence the limsup leg asks for d > eps at every checkpoint
    window; without eps any distance above the liminf tolerance counts.
    """
    if eps is not None:
        eps = as_fraction(eps)
        if not 0 < eps <= 1:
            raise PreconditionViolation("eps must lie in (0, 1]")
    points = [x, y]
    _require_tuple(points)
    _require_distinct(points)

    shared = common_plan(points)
    if _all_periodic(points):
        stats = joint_tail_stats(points)
        liminf, limsup = stats.liminf_pair(0), stats.limsup_pair(0)
        verdict = Verdict(
            name=VerdictName.LI_YORKE, holds=liminf == 0 and limsup > 0,
            evidence=EvidenceKind.EXACT, value=liminf, note=f"limsup {limsup}",
        )
    elif shared is not None:
        plan, coords = shared
        verdict = _plan_li_yorke(plan, coords[0], coords[1])
    else:
        cap = get_settings().liminf_tolerance_exponent
        # d > eps iff the pair disagrees within the first separation_window(eps) symbols
        apart = separation_window(eps) if eps is not None else cap
        results = []
        for n in _checkpoints(checkpoints):
            agree = _tail_agreements(points, n, max(cap, apart))[0]
            results.append((n, bool((agree >= cap).any()), bool((agree < apart).any())))
        holds = all(low and high for _, low, high in results)
        above = f"above {eps}" if eps is not None else "above it"
        verdict = Verdict(
            name=VerdictName.LI_YORKE, holds=holds, parameter=eps, evidence=EvidenceKind.HORIZON,
            horizon=results[-1][0], value=dyadic(cap),
            note=f"per checkpoint: distance dips below the tolerance and returns {above}",
        )
    return TupleCertificate(points=_literals(points), verdicts=[verdict])


# ---------------------------------------------------------------------------
# Distributional scrambling
# ---------------------------------------------------------------------------

def _grid(t_grid: Optional[Sequence[Number]]) -> List[Fraction]:
    grid = sorted({as_fraction(t) for t in (t_grid or DEFAULT_T_GRID)}, reverse=True)
    if any(t <= 0 for t in grid):
        raise PreconditionViolation("thresholds must be positive")
    return grid


def _row(n: int, block: Optional[int], kind: str, threshold: Fraction, count: int,
         body: Optional[int] = None, window: int = 0) -> DensityRow:
    lower = None
    if body is not None:
        lower = Fraction(max(0, body - window + 1), n)
    return DensityRow(
        checkpoint=n, block=block, kind=kind, threshold=threshold,
        count=count, density=Fraction(count, n), lower_bound=lower,
    )


def plan_scrambling_evidence(
    plan: BlockPlan,
    coords: Sequence[int],
    delta: Fraction,
    grid: Sequence[Fraction],
    rounds: int = 3,
) -> Tuple[bool, List[DensityRow], List[int], str]:
    """
    Structural proof plus exact counts for a plan-backed tuple.

    Returns:
        (holds, density rows, separating DISTAL blocks of the first rotation, note)
    """
    rotation = len(plan.groups)
    asym_blocks = [2 * r + 1 for r in range(rotation + 1)]
    common = all(len({plan.body(k).sources[i] for i in coords}) == 1 for k in asym_blocks)
    separating = [
        k for k in range(2, 2 * rotation + 1, 2)
        if min_separation([plan.body(k).sources[i] for i in coords]) > delta
    ]
    dominated = schedule_dominates(plan, 2 * rotation + 2)
    holds = common and bool(separating) and dominated

    rows: List[DensityRow] = []
    for k in range(1, 2 * rounds, 2):
        body = plan.body(k)
        for t in grid:
            rule = close_rule(t).on(coords)
            rows.append(_row(body.end, k, "close", t, plan_count(plan, rule, body.end), body.length, rule.window))
    sep_rule = separated_rule(delta).on(coords)
    sep_blocks = sorted(k + 2 * rotation * r for k in separating for r in range(rounds))[:rounds]
    for k in sep_blocks:
        body = plan.body(k)
        rows.append(_row(body.end, k, "separated", delta, plan_count(plan, sep_rule, body.end),
                         body.length, sep_rule.window))

    note = (
        "ASYMPTOTIC bodies share one source; DISTAL blocks "
        f"{separating} (repeating every {2 * rotation} blocks) separate the tuple beyond {delta}; "
        "L_k >= k * S_(k-1) sends (L_k - window) / S_k to 1"
    )
    return holds, rows, separating, note


def _horizon_scrambling(
    points: Sequence[Point],
    delta: Fraction,
    grid: Sequence[Fraction],
    checkpoints: Sequence[int],
) -> Tuple[bool, List[DensityRow]]:
    tolerance = _tolerance()
    rows: List[DensityRow] = []
    holds = True
    for t in grid:
        counts = horizon_counts(points, close_rule(t), checkpoints)
        rows.extend(_row(n, None, "close", t, c) for n, c in zip(checkpoints, counts))
        holds &= max(Fraction(c, n) for n, c in zip(checkpoints, counts)) >= 1 - tolerance
    counts = horizon_counts(points, separated_rule(delta), checkpoints)
    rows.extend(_row(n, None, "separated", delta, c) for n, c in zip(checkpoints, counts))
    holds &= max(Fraction(c, n) for n, c in zip(checkpoints, counts)) >= 1 - tolerance
    return holds, rows


@log_function_call
def is_dist_scrambled(
    points: Sequence[Point],
    delta: Number,
    t_grid: Optional[Sequence[Number]] = None,
    checkpoints: Optional[Sequence[int]] = None,
    evidence: Optional[EvidenceKind] = None,
    rounds: int = 3,
) -> TupleCertificate:
    """
    Distributional n-delta scrambling: for every t > 0 the times where all
    pairs are t-close have upper density one, and so do the times where all
    pairs are more than delta apart.

    Args:
        points: Pairwise distinct tuple
        delta: Separation in (0, 1)
        t_grid: Thresholds reported (and tested for HORIZON evidence)
        checkpoints: Horizons for HORIZON evidence
        evidence: Force HORIZON evaluation for plan-backed tuples
        rounds: Block ends reported per condition for plan-backed tuples

    Returns:
        TupleCertificate with a DIST_SCRAMBLED verdict and density rows
    """
    delta = as_fraction(delta)
    if not 0 < delta < 1:
        raise PreconditionViolation("delta must lie in (0, 1)")
    _require_tuple(points)
    _require_distinct(points)
    grid = _grid(t_grid)
    shared = common_plan(points)

    if _all_periodic(points):
        stats = joint_tail_stats(points)
        tails_equal = all(e is None for row in stats.rows for e in row)
        separated = stats.separated_fraction(delta)
        verdict = Verdict(
            name=VerdictName.DIST_SCRAMBLED, holds=tails_equal and separated == 1,
            parameter=delta, evidence=EvidenceKind.EXACT, value=separated,
            note="distribution limits exist; closeness density one for every t needs equal tails",
        )
        details = {"close_limits": {str(t): str(stats.close_fraction(t)) for t in grid}}
        return TupleCertificate(points=_literals(points), verdicts=[verdict], details=details)

    if shared is not None and evidence != EvidenceKind.HORIZON:
        plan, coords = shared
        holds, rows, separating, note = plan_scrambling_evidence(plan, coords, delta, grid, rounds)
        verdict = Verdict(
            name=VerdictName.DIST_SCRAMBLED, holds=holds, parameter=delta,
            evidence=EvidenceKind.EXACT, value=delta, note=note,
        )
        return TupleCertificate(
            points=_literals(points), verdicts=[verdict], densities=rows,
            details={"coordinates": list(coords), "separating_blocks": separating},
        )

    marks = _checkpoints(checkpoints)
    holds, rows = _horizon_scrambling(points, delta, grid, marks)
    verdict = Verdict(
        name=VerdictName.DIST_SCRAMBLED, holds=holds, parameter=delta,
        evidence=EvidenceKind.HORIZON, horizon=marks[-1], value=1 - _tolerance(),
        note="largest checkpoint density of each condition reaches 1 - tolerance",
    )
    return TupleCertificate(points=_literals(points), verdicts=[verdict], densities=rows)


@log_function_call
def is_dc1_pair(
    x: Point,
    y: Point,
    delta: Number,
    t_grid: Optional[Sequence[Number]] = None,
    checkpoints: Optional[Sequence[int]] = None,
) -> TupleCertificate:
    """limsup_n Phi^n(t) = 1 for every t > 0 and liminf_n Phi^n(delta) = 0."""
    delta = as_fraction(delta)
    points = [x, y]
    if _all_periodic(points):
        stats = joint_tail_stats(points)
        tails_equal = all(row[0] is None for row in stats.rows)
        at_delta = stats.close_fraction(delta, pair=0)
        verdict = Verdict(
            name=VerdictName.DC1_PAIR, holds=tails_equal and at_delta == 0, parameter=delta,
            evidence=EvidenceKind.EXACT, value=at_delta, note="limit of Phi^n(delta)",
        )
        return TupleCertificate(points=_literals(points), verdicts=[verdict])

    scrambled = is_dist_scrambled(points, delta, t_grid, checkpoints)
    base = scrambled.verdicts[0]
    rows = list(scrambled.densities)
    # Phi^n(delta) <= 1 - (separated density) at each separation checkpoint
    close_delta = close_rule(delta)
    for row in scrambled.densities:
        if row.kind == "separated":
            count = count_hits(points, close_delta, row.checkpoint)
            rows.append(_row(row.checkpoint, row.block, "phi_delta", delta, count))
    verdict = Verdict(
        name=VerdictName.DC1_PAIR, holds=base.holds, parameter=delta, evidence=base.evidence,
        horizon=base.horizon, value=base.value, note="from the pair's distributional scrambling",
    )
    return TupleCertificate(points=_literals(points), verdicts=[verdict], densities=rows, details=scrambled.details)


# ---------------------------------------------------------------------------
# Witness searches
# ---------------------------------------------------------------------------

def _bounded_distance(x: Point, y: Point, window: int) -> Fraction:
    if isinstance(x, EpPoint) and isinstance(y, EpPoint):
        return dist(x, y)
    wx, wy = x.word(0, window), y.word(0, window)
    first = next((i for i, (a, b) in enumerate(zip(wx, wy)) if a != b), window)
    return dyadic(first)


def _extend(prefix: Sequence[int], tail: Point, alphabet_size: int) -> Point:
    if isinstance(tail, EpPoint):
        return EpPoint(preperiod=tuple(prefix) + tail.preperiod, cycle=tail.cycle, alphabet_size=alphabet_size)
    return tail.prepend(prefix)


@log_function_call
def rp_witness_search(
    s: Sft,
    points: Sequence[Point],
    eps: Number,
    budget: Optional[int] = None,
    target_symbol: Optional[int] = None,
) -> Optional[RpWitness]:
    """
    Regionally proximal witness: y_i with d(x_i, y_i) < eps and diam(sigma^k y) = 0.

    y_i keeps the first m symbols of x_i (2^-m < eps), follows a bridge of a
    common length to a common symbol c, then a common periodic tail through c.

    Args:
        s: The SFT
        points: The tuple x
        eps: Accuracy in (0, 1]
        budget: Longest bridge tried (defaults to alphabet size squared + 1)
        target_symbol: Force c (used to route through a fixed point)

    Returns:
        RpWitness, or None when no common bridge exists within the budget
    """
    eps = as_fraction(eps)
    if not 0 < eps <= 1:
        raise PreconditionViolation("eps must lie in (0, 1]")
    if not points:
        raise PreconditionViolation("empty tuple")
    for p in points:
        s.check_admissible(p)

    m = separation_window(eps) + 1
    if target_symbol is None and all(first_difference(points[0], p) is None for p in points[1:]):
        return RpWitness(
            points=_literals(points), k=0, epsilon=eps, depth=0,
            approximation=[Fraction(0)] * len(points), diameter=Fraction(0), objects=list(points),
        )

    budget = budget or s.alphabet_size ** 2 + 1
    lasts = [p.symbol_at(m - 1) for p in points]
    fixed = [f.cycle[0] for f in fixed_points(s)]
    if target_symbol is not None:
        candidates = [target_symbol]
    else:
        candidates = fixed + [c for c in range(s.alphabet_size) if c not in fixed]
    tails = {}
    for c in candidates:
        tail = EpPoint.constant(c, s.alphabet_size) if c in fixed else cycle_through(s, c)
        if tail is not None:
            tails[c] = tail

    for steps in range(1, budget + 1):
        for c, tail in tails.items():
            bridges = [bridge_word(s, a, c, steps) for a in lasts]
            if any(b is None for b in bridges):
                continue
            ys = [
                EpPoint(preperiod=p.word(0, m) + bridge, cycle=tail.cycle, alphabet_size=s.alphabet_size)
                for p, bridge in zip(points, bridges)
            ]
            k = m + steps - 1
            diameter = tuple_diameter(ys, k) if len(ys) > 1 else Fraction(0)
            logger.debug(f"Regionally proximal witness through symbol {c} at time {k}")
            return RpWitness(
                points=_literals(ys), k=k, epsilon=eps, depth=m, target_symbol=c,
                approximation=[_bounded_distance(x, y, k + 1) for x, y in zip(points, ys)],
                diameter=diameter, objects=ys,
            )
    logger.info(f"No regionally proximal witness within {budget} bridge steps")
    return None


def _cylinder_word(s: Sft, cylinder: Union[str, Sequence[int]]) -> Tuple[int, ...]:
    word = tuple(int(ch) for ch in cylinder) if isinstance(cylinder, str) else tuple(cylinder)
    if not word:
        raise PreconditionViolation("cylinder word must be nonempty")
    s.alphabet.validate_word(word)
    for a, b in zip(word, word[1:]):
        if not s.allows(a, b):
            raise PreconditionViolation(f"cylinder {format_word(word)} is not an allowed word")
    return word


@log_function_call
def sensitive_tuple_witness(
    s: Sft,
    targets: Sequence[Point],
    cylinder: Union[str, Sequence[int]],
    eps: Number,
    budget: Optional[int] = None,
) -> Optional[SensitivityWitness]:
    """
    Points y_i in the cylinder U with sigma^k y_i = x_i exactly.

    Returns:
        SensitivityWitness, or None when the targets cannot be reached from U
        after a common number of steps
    """
    eps = as_fraction(eps)
    word = _cylinder_word(s, cylinder)
    _require_tuple(targets)
    _require_distinct(targets)

    if all(t.word(0, len(word)) == word for t in targets):
        ys, k = list(targets), 0
    else:
        ys, k = None, 0
        for steps in range(1, (budget or s.alphabet_size ** 2 + 1) + 1):
            bridges = [bridge_word(s, word[-1], t.symbol_at(0), steps) for t in targets]
            if all(b is not None for b in bridges):
                ys = [_extend(word + b, t, s.alphabet_size) for b, t in zip(bridges, targets)]
                k = len(word) + steps - 1
                break
        if ys is None:
            return None

    return SensitivityWitness(
        cylinder=format_word(word),
        targets=_literals(targets),
        points=_literals(ys),
        k=k,
        epsilon=eps,
        target_distances=[Fraction(0)] * len(ys),
        objects=ys,
    )


@log_function_call
def sensitivity_witness(
    s: Sft,
    x: Point,
    eps: Number,
    budget: Optional[int] = None,
) -> Optional[SensitivityWitness]:
    """
    A point y with d(x, y) < eps and a time k with d(sigma^k x, sigma^k y) = 1.

    Returns:
        SensitivityWitness (cylinder = the shared prefix, target = x), or None
        when x has no branching within the budget
    """
    eps = as_fraction(eps)
    s.check_admissible(x)
    m = closeness_window(eps)
    prefix = x.word(0, m)
    budget = budget or s.alphabet_size ** 2 + 2
    # An empty cylinder only leaves k = 0
    times = range(m, m + budget) if m > 0 else range(1)

    for k in times:
        avoid = x.symbol_at(k)
        for b in range(s.alphabet_size):
            if b == avoid:
                continue
            tail = cycle_through(s, b)
            if tail is None:
                continue
            bridge = bridge_word(s, prefix[-1], b, k - m + 1) if m > 0 else ()
            if bridge is None:
                continue
            y = EpPoint(preperiod=prefix + bridge, cycle=tail.cycle, alphabet_size=s.alphabet_size)
            return SensitivityWitness(
                cylinder=format_word(prefix),
                targets=_literals([x]),
                points=_literals([y]),
                k=k,
                epsilon=eps,
                target_distances=[_bounded_distance(x, y, k + 1)],
                objects=[y],
            )
    return None


@log_function_call
def classify_sensitive_or_equicontinuous(s: Sft) -> DichotomyVerdict:
    """
    A transitive SFT is either sensitive or a single periodic orbit.

    The SENSITIVE verdict carries two points in a one-symbol cylinder whose
    next iterates start with different symbols.
    """
    require_irreducible(s)
    if is_single_cycle(s):
        return DichotomyVerdict(
            dichotomy=Dichotomy.PERIODIC,
            note="the system is one periodic orbit, hence equicontinuous",
        )
    branch = next(a for a in range(s.alphabet_size) if len(s.successors(a)) >= 2)
    b1, b2 = s.successors(branch)[:2]
    targets = [cycle_through(s, b1), cycle_through(s, b2)]
    witness = sensitive_tuple_witness(s, targets, (branch,), SENSITIVITY_CONSTANT)
    return DichotomyVerdict(
        dichotomy=Dichotomy.SENSITIVE,
        constant=SENSITIVITY_CONSTANT,
        witness=witness,
        note=f"symbol {branch} branches to {b1} and {b2}",
    )


@log_function_call
def classify_tuple(
    s: Sft,
    points: Sequence[Point],
    eps: Number,
    delta: Optional[Number] = None,
    t_grid: Optional[Sequence[Number]] = None,
    checkpoints: Optional[Sequence[int]] = None,
    evidence: Optional[EvidenceKind] = None,
) -> TupleCertificate:
    """Every relation certified for one tuple, in a fixed order."""
    eps = as_fraction(eps)
    _require_tuple(points)
    for p in points:
        s.check_admissible(p)

    verdicts: List[Verdict] = []
    witness = rp_witness_search(s, points, eps)
    verdicts.append(Verdict(
        name=VerdictName.REGIONALLY_PROXIMAL, holds=witness is not None, parameter=eps,
        evidence=EvidenceKind.EXACT if witness is not None else EvidenceKind.HORIZON,
        value=witness.diameter if witness is not None else None,
        note="witness replays exactly" if witness is not None else "no witness within the search budget",
    ))
    verdicts.extend(is_eps_asymptotic(points, eps, checkpoints).verdicts)
    if eps < 1:
        verdicts.extend(is_eps_distal(points, eps, checkpoints).verdicts)

    densities: List[DensityRow] = []
    distinct = all(first_difference(a, b) is not None for a, b in combinations(points, 2)) \
        if _all_periodic(points) else True
    if distinct:
        try:
            _require_distinct(points)
        except PreconditionViolation:
            distinct = False
    if distinct and len(points) == 2:
        verdicts.extend(is_li_yorke_pair(points[0], points[1], checkpoints, eps if eps < 1 else None).verdicts)
    if distinct and delta is not None:
        scrambled = is_dist_scrambled(points, delta, t_grid, checkpoints, evidence)
        verdicts.extend(scrambled.verdicts)
        densities = scrambled.densities

    return TupleCertificate(
        points=_literals(points),
        verdicts=verdicts,
        witness=witness,
        densities=densities,
        details={"distinct": distinct},
    )

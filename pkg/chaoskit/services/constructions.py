"""
Constructions of asymptotic, distal and distributionally scrambled tuples.

Every construction returns the points it built together with a certificate
produced by the chaos_metrics certifiers, so the result can be replayed.
"""

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from chaoskit.errors import (
    NoFixedPoint,
    NotMixing,
    PreconditionViolation,
    SingleCycle,
    WitnessNotFound,
)
from chaoskit.models.certificates import (
    ConstructionResult,
    DistalTargets,
    RouteDecision,
    RpWitness,
    TraceCertificate,
    TupleCertificate,
)
from chaoskit.models.reports import ScrambledFamilyReport
from chaoskit.services.block_plan import scrambling_plan
from chaoskit.services.chaos_metrics import (
    is_dist_scrambled,
    is_eps_asymptotic,
    is_eps_distal,
    rp_witness_search,
    sensitive_tuple_witness,
)
from chaoskit.services.sft import (
    BlockCoder,
    Sft,
    allowed_words,
    bridge_word,
    cycle_through,
    fixed_points,
    is_single_cycle,
    is_weakly_mixing,
    iter_periodic_points,
    power_system,
    primitivity_exponent,
    require_irreducible,
    shortest_path,
)
from chaoskit.services.shadowing import concat_pseudo_orbit, shadowing_modulus, trace
from chaoskit.services.symbolic import (
    EpPoint,
    Number,
    Point,
    Word,
    as_fraction,
    closeness_window,
    dist,
    dyadic,
    format_point,
    format_word,
    joint_tail_stats,
    min_separation,
)
from chaoskit.utils.config import get_settings
from chaoskit.utils.logging import get_logger, log_execution_time, log_function_call

# Initialize logger
logger = get_logger(__name__)

MAX_TARGET_PERIOD = 32


def _require_chaotic(s: Sft) -> int:
    """Irreducible and not a single cycle; returns the graph period."""
    analysis = require_irreducible(s)
    if is_single_cycle(s):
        raise SingleCycle("the system is a single periodic orbit")
    return analysis.period


def _approximation(x: Point, y: Point, depth: int) -> Fraction:
    """Exact d(x, y) for eventually periodic points, else the bound from a shared prefix."""
    if isinstance(x, EpPoint) and isinstance(y, EpPoint):
        return dist(x, y)
    return dyadic(depth)


def _splice(s: Sft, head: Point, k: int, tail: Point, delta: Fraction, eta: Fraction) -> TraceCertificate:
    """Trace the pseudo-orbit head, ..., sigma^{k-1} head, tail, sigma tail, ..."""
    po = concat_pseudo_orbit(s, [(head, k), (tail, None)], delta)
    return trace(po, eta)


def _common_bridge(s: Sft, sources: Sequence[int], targets: Sequence[int]) -> Tuple[int, List[Word]]:
    """Least number of edges after which every source reaches its target, with the bridges."""
    budget = (primitivity_exponent(s) or s.alphabet_size ** 2) + 1
    for steps in range(1, budget + 1):
        bridges = [bridge_word(s, a, b, steps) for a, b in zip(sources, targets)]
        if all(b is not None for b in bridges):
            return steps, bridges
    raise WitnessNotFound(f"no common bridge length up to {budget}")


def _common_source(s: Sft) -> EpPoint:
    fixed = fixed_points(s)
    return fixed[0] if fixed else cycle_through(s, 0)


@log_execution_time
def build_asymptotic_tuple(
    s: Sft,
    points: Sequence[Point],
    eps: Number,
    eta: Number,
) -> ConstructionResult:
    """
    An eps-asymptotic tuple within 2*eta of a regionally proximal tuple.

    The regionally proximal witness y (at accuracy shadowing_modulus(eta))
    collapses at time k; the pseudo-orbit y_i, ..., sigma^{k-1} y_i followed by
    the orbit of sigma^k y_1 is traced, and the traced points share a tail.

    Args:
        s: Irreducible SFT
        points: Tuple x
        eps: Asymptoticity parameter in (0, 1]
        eta: Approximation scale, 0 < eta < eps / 2

    Returns:
        ConstructionResult with an EXACT eps-asymptotic certificate

    Raises:
        WitnessNotFound: when x is not regionally proximal
    """
    eps, eta = as_fraction(eps), as_fraction(eta)
    if not 0 < eps <= 1 or not 0 < eta < eps / 2:
        raise PreconditionViolation("need 0 < eta < eps / 2 and eps <= 1")
    if len(points) < 2:
        raise PreconditionViolation("a tuple needs at least two points")
    require_irreducible(s)
    for p in points:
        s.check_admissible(p)

    delta = shadowing_modulus(s, eta)
    witness = rp_witness_search(s, points, delta)
    if witness is None:
        raise WitnessNotFound("the tuple is not regionally proximal")
    ys, k = witness.objects, witness.k

    tail = ys[0].shift(k) if isinstance(ys[0], EpPoint) else ys[0]
    traces = [_splice(s, y, k, tail, delta, eta) for y in ys]
    zs = [t.point for t in traces]
    certificate = is_eps_asymptotic(zs, eps)
    depth = witness.depth
    logger.info(f"Asymptotic tuple built: collapse time {k}, holds={certificate.holds}")
    return ConstructionResult(
        kind="asymptotic",
        inputs=[format_point(p) for p in points],
        points=[format_point(z) for z in zs],
        epsilon=eps,
        eta=eta,
        approximation=[_approximation(x, z, depth) for x, z in zip(points, zs)],
        certificate=certificate,
        traces=traces,
        witness=witness,
        objects=zs,
    )


@log_function_call
def pick_distal_sensitive_targets(s: Sft, n: int, max_period: int = MAX_TARGET_PERIOD) -> DistalTargets:
    """
    n distinct periodic points, shortest least periods first and
    lexicographic within a period.

    Distinct periodic points are pairwise distal; their exact separation is
    the liminf of the least pairwise distance over the joint cycle.
    """
    if n < 2:
        raise PreconditionViolation("need at least two targets")
    _require_chaotic(s)

    found: List[EpPoint] = []
    period = 0
    for p in range(1, max_period + 1):
        cycles = sorted({pt.cycle for pt in iter_periodic_points(s, p) if len(pt.cycle) == p})
        for cycle in cycles[:n - len(found)]:
            found.append(EpPoint(cycle=cycle, alphabet_size=s.alphabet_size))
            period = p
        if len(found) == n:
            break
    if len(found) < n:
        raise PreconditionViolation(f"fewer than {n} periodic points of period <= {max_period}")

    separation = joint_tail_stats(found).liminf_min_distance()
    eps = separation / 2
    witness = sensitive_tuple_witness(s, found, (found[0].symbol_at(0),), eps)
    logger.debug(f"Targets {[t.literal() for t in found]} separated by {separation}")
    return DistalTargets(
        targets=[t.literal() for t in found],
        separation=separation,
        eps=eps,
        period=period,
        sensitivity=witness,
        objects=found,
    )


@log_function_call
def starting_points(s: Sft, n: int) -> List[EpPoint]:
    """
    Default tuple for the builders: n distinct periodic points.

    For graph period q > 1 the points are the targets of sigma^q on the
    cyclic class C0, decoded, so they all start in C0.
    """
    q = _require_chaotic(s)
    if q == 1:
        return pick_distal_sensitive_targets(s, n).objects
    work, coder = power_system(s, q, cyclic_class=0)
    return [coder.decode(v) for v in pick_distal_sensitive_targets(work, n).objects]


@log_execution_time
def build_distal_tuple(
    s: Sft,
    points: Sequence[Point],
    eta: Number,
    targets: Optional[DistalTargets] = None,
) -> ConstructionResult:
    """
    An eps_v-distal tuple within eta of the given tuple.

    w_i keeps the first closeness_window(eta) symbols of x_i, bridges with a
    common length and then follows the periodic target v_i, so the tails of
    w are exactly the tails of the targets.

    For graph period q > 1 the tuple is built for sigma^q on the blocks
    starting in C0 (targets, when given, are read in that presentation) and
    decoded; eps_v is then half the decoded tail separation, and the power
    separation and the ratio between the two are reported as power_delta
    and distortion.

    Raises:
        PreconditionViolation: for q > 1 when a point does not start in C0
    """
    eta = as_fraction(eta)
    if len(points) < 2:
        raise PreconditionViolation("a tuple needs at least two points")
    q = _require_chaotic(s)
    for p in points:
        s.check_admissible(p)

    work, coder = (s, None) if q == 1 else power_system(s, q, cyclic_class=0)
    picked = targets or pick_distal_sensitive_targets(work, len(points))
    if len(picked.objects) != len(points):
        raise PreconditionViolation("one target per point")
    chosen = picked
    if coder is not None:
        decoded = [coder.decode(v) for v in picked.objects]
        separation = joint_tail_stats(decoded).liminf_min_distance()
        chosen = DistalTargets(
            targets=[t.literal() for t in decoded],
            separation=separation,
            eps=separation / 2,
            period=picked.period * q,
            objects=decoded,
        )
    if not 0 < eta < chosen.eps / 2:
        raise PreconditionViolation(f"eta must lie in (0, {chosen.eps / 2})")

    depth = closeness_window(eta)
    if coder is None:
        heads = [x.word(0, depth) for x in points]
    else:
        heads = [_encode_prefix(coder, x, -(-depth // q)) for x in points]
    vs = picked.objects
    steps, bridges = _common_bridge(work, [h[-1] for h in heads], [v.symbol_at(0) for v in vs])
    k = len(heads[0]) + steps - 1
    delta = shadowing_modulus(work, eta)

    traces, ws = [], []
    for head, bridge, v in zip(heads, bridges, vs):
        w = EpPoint(preperiod=head + bridge, cycle=v.cycle, alphabet_size=work.alphabet_size)
        cert = _splice(work, w, k, v, delta, eta)
        traces.append(cert)
        ws.append(cert.point if coder is None else coder.decode(cert.point))

    certificate = is_eps_distal(ws, chosen.eps)
    logger.info(f"Distal tuple built: tails from time {k * q}, holds={certificate.holds}")
    return ConstructionResult(
        kind="distal",
        inputs=[format_point(p) for p in points],
        points=[format_point(w) for w in ws],
        epsilon=chosen.eps,
        eta=eta,
        approximation=[_approximation(x, w, depth) for x, w in zip(points, ws)],
        certificate=certificate,
        traces=traces,
        targets=chosen,
        power=q,
        power_delta=picked.eps if coder is not None else None,
        distortion=chosen.eps / picked.eps if coder is not None else None,
        objects=ws,
    )


def _encode_prefix(coder: BlockCoder, x: Point, depth: int) -> Word:
    """The first `depth` symbols of x in a power presentation."""
    index = {block: i for i, block in enumerate(coder.blocks)}
    word = []
    for t in range(depth):
        block = x.word(t * coder.step, coder.width)
        if block not in index:
            raise PreconditionViolation(
                f"point {format_point(x)} does not start in cyclic class C0 (block {format_word(block)})"
            )
        word.append(index[block])
    return tuple(word)


def _sample(subtuples: List[Tuple[int, ...]], cap: int) -> List[Tuple[int, ...]]:
    if len(subtuples) <= cap:
        return subtuples
    return [subtuples[i * len(subtuples) // cap] for i in range(cap)]


def _scrambled_family(
    s: Sft,
    m: int,
    n: int,
    eta: Number,
    points: Optional[Sequence[Point]],
    route: Optional[str] = None,
) -> ScrambledFamilyReport:
    eta = as_fraction(eta)
    if not 0 < eta < 1:
        raise PreconditionViolation("eta must lie in (0, 1)")
    if not 2 <= n <= m:
        raise PreconditionViolation("need 2 <= n <= m")
    if points is not None and len(points) != m:
        raise PreconditionViolation(f"expected {m} points, got {len(points)}")
    q = _require_chaotic(s)
    for p in points or []:
        s.check_admissible(p)

    work, coder = (s, None) if q == 1 else power_system(s, q, cyclic_class=0)
    chosen = pick_distal_sensitive_targets(work, n)
    common = _common_source(work)
    depth = closeness_window(eta)
    if points is None:
        prefixes = [common.word(0, depth)] * m
    elif coder is None:
        prefixes = [x.word(0, depth) for x in points]
    else:
        prefixes = [_encode_prefix(coder, x, depth) for x in points]

    groups = list(combinations(range(m), n))
    exponent = primitivity_exponent(work)
    if exponent is None:
        raise NotMixing("the presentation used for the plan is not mixing")
    bridge_length = exponent - 1
    plan = scrambling_plan(
        work, prefixes, common, chosen.objects, groups, bridge_length,
        description=f"scrambled[{m},{n}]",
    )
    targets = chosen
    power_delta, distortion = None, None
    if coder is not None:
        plan = plan.decode(coder, s.alphabet_size)
        decoded = plan.targets
        separation = min_separation(decoded)
        targets = DistalTargets(
            targets=[t.literal() for t in decoded],
            separation=separation,
            eps=separation / 2,
            period=chosen.period * q,
            objects=decoded,
        )
        power_delta = chosen.eps
        distortion = targets.eps / chosen.eps
    delta = targets.eps

    members = plan.points()
    subtuples = list(combinations(range(m), n))
    settings = get_settings()
    picked = _sample(subtuples, settings.family_certificate_cap)

    def certify(coords: Tuple[int, ...]) -> TupleCertificate:
        return is_dist_scrambled([members[i] for i in coords], delta)

    with ThreadPoolExecutor(max_workers=max(1, settings.workers)) as pool:
        certificates = list(pool.map(certify, picked))

    route = route or ("direct" if q == 1 else "periodic_decomposition")
    report = ScrambledFamilyReport(
        route=route,
        size=m,
        n=n,
        delta=delta,
        eta=eta,
        points=[p.description for p in members],
        prefixes=[format_word(p) for p in prefixes],
        approximation=[dyadic(q * depth)] * m if points is not None else [],
        targets=targets,
        common_source=plan.common_source.literal(),
        bridge_length=bridge_length * q,
        groups=len(groups),
        power=q,
        power_delta=power_delta,
        distortion=distortion,
        subtuples=len(subtuples),
        sampled=len(picked) < len(subtuples),
        certificates=certificates,
        objects=members,
        plan=plan,
    )
    logger.info(
        f"Family of {m} ({route}): {len(certificates)}/{len(subtuples)} {n}-tuples certified, "
        f"delta={delta}, holds={report.holds}"
    )
    return report


@log_execution_time
def build_dist_scrambled_tuple(
    s: Sft,
    points: Sequence[Point],
    n: Optional[int] = None,
    eta: Number = Fraction(1, 8),
) -> ScrambledFamilyReport:
    """
    A distributionally n-delta_n-scrambled tuple whose i-th point starts
    with the first closeness_window(eta) symbols of x_i.

    For graph period q > 1 the tuple comes from the periodic decomposition
    route, and the points must start in the cyclic class C0.
    """
    n = n if n is not None else len(points)
    if n != len(points):
        raise PreconditionViolation(f"n={n} but {len(points)} points were given")
    return _scrambled_family(s, n, n, eta, points)


@log_execution_time
def periodic_case(
    s: Sft,
    n: int,
    eta: Number = Fraction(1, 8),
    points: Optional[Sequence[Point]] = None,
) -> ScrambledFamilyReport:
    """
    Scrambled n-tuple on an irreducible SFT of any period q.

    For q > 1 the plan is built for sigma^q on the blocks starting in the
    cyclic class C0 and decoded back; the decoded separation and its ratio
    to the power separation are recorded in the report.
    """
    return _scrambled_family(s, n, n, eta, points)


@log_execution_time
def build_scrambled_family(
    s: Sft,
    m: int,
    n: int,
    eta: Number = Fraction(1, 8),
    points: Optional[Sequence[Point]] = None,
) -> ScrambledFamilyReport:
    """
    m points such that every n of them are distributionally n-delta_n-scrambled.

    DISTAL blocks rotate through all n-subsets of the family, so every subset
    is served by infinitely many blocks. Certificates cover every n-subset up
    to family_certificate_cap, and a deterministic sample beyond it.
    """
    return _scrambled_family(s, m, n, eta, points)


@log_execution_time
def weak_mixing_case(
    s: Sft,
    m: int,
    n: int,
    eta: Number = Fraction(1, 8),
) -> ScrambledFamilyReport:
    """Family construction under the weak mixing hypothesis (direct route)."""
    if not is_weakly_mixing(s):
        raise NotMixing("the system is not weakly mixing")
    return _scrambled_family(s, m, n, eta, None, route="weak_mixing")


@log_function_call
def theorem_route(s: Sft) -> RouteDecision:
    """Fixed point available: direct route; otherwise decompose along a periodic orbit."""
    q = _require_chaotic(s)
    fixed = fixed_points(s)
    if fixed:
        return RouteDecision(
            route="fixed_point",
            period=q,
            fixed_points=[f.literal() for f in fixed],
            note="every tuple is regionally proximal; constructions run in the system itself",
        )
    periodic = cycle_through(s, 0)
    return RouteDecision(
        route="periodic_decomposition",
        period=q,
        periodic_point=periodic.literal(),
        note=f"no fixed point; constructions run for sigma^{q} on one cyclic class and are decoded",
    )


@log_function_call
def transitive_approximant(s: Sft, depth: int) -> Word:
    """Every allowed word of length `depth`, in lexicographic order, joined by shortest connectors."""
    if depth < 1:
        raise PreconditionViolation("depth must be positive")
    require_irreducible(s)
    words = allowed_words(s, depth)
    out: List[int] = list(words[0])
    for word in words[1:]:
        out.extend(shortest_path(s, out[-1], word[0]))
        out.extend(word)
    return tuple(out)


def cover_cylinders(s: Sft, cylinders: Sequence[Sequence[int]], depth: int) -> List[int]:
    """Indices i_j at which the approximant of the given depth reads cylinder j."""
    approximant = transitive_approximant(s, depth)
    indices = []
    for cylinder in cylinders:
        word = tuple(int(ch) for ch in cylinder) if isinstance(cylinder, str) else tuple(cylinder)
        if not 0 < len(word) <= depth:
            raise PreconditionViolation(f"cylinder length must lie in 1..{depth}")
        hit = next(
            (i for i in range(len(approximant) - len(word) + 1) if approximant[i:i + len(word)] == word),
            None,
        )
        if hit is None:
            raise PreconditionViolation(f"cylinder {format_word(word)} is not an allowed word")
        indices.append(hit)
    return indices


@log_function_call
def rp_via_fixed_point(
    s: Sft,
    indices: Sequence[int],
    eps: Number = Fraction(1, 2),
    depth: int = 3,
) -> RpWitness:
    """
    Regional proximality of (sigma^{i_1} x, ..., sigma^{i_n} x) for a
    transitive-point approximant x, routed through a fixed point.

    x is the approximant of the given depth continued into the fixed orbit
    a a a ...; every coordinate of the witness is bridged to a.

    Raises:
        NoFixedPoint: when no symbol has a self-loop
    """
    fixed = fixed_points(s)
    if not fixed:
        raise NoFixedPoint("no symbol carries a self-loop")
    require_irreducible(s)
    a = fixed[0].cycle[0]
    approximant = transitive_approximant(s, depth)
    tail = shortest_path(s, approximant[-1], a) if approximant[-1] != a else ()
    x = EpPoint(preperiod=approximant + tail, cycle=(a,), alphabet_size=s.alphabet_size)
    shifted = [x.shift(i) for i in indices]
    witness = rp_witness_search(s, shifted, eps, target_symbol=a)
    if witness is None:
        raise WitnessNotFound(f"no witness through the fixed symbol {a}")
    return witness

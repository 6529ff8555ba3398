"""
Subshifts of finite type as transition graphs.

An Sft is an essential 0/1 transition matrix over {0, ..., k-1}; a point
belongs to it iff every adjacent symbol pair is allowed. The graph analyses
(irreducibility, period, cyclic classes) carry the hypotheses used by the
constructions.
"""

import math
from functools import lru_cache
from itertools import product
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from chaoskit.errors import (
    EmptySubshift,
    InadmissiblePoint,
    NotIrreducible,
    PreconditionViolation,
)
from chaoskit.services.symbolic import (
    Alphabet,
    EpPoint,
    PlanBlock,
    Point,
    ScheduledPoint,
    Word,
    format_word,
)
from chaoskit.utils.logging import get_logger, log_function_call

# Initialize logger
logger = get_logger(__name__)

ENTROPY_TOLERANCE = 1e-12
ENTROPY_MAX_ITERATIONS = 10 ** 6


class Sft(BaseModel):
    """Essential one-step subshift of finite type."""

    model_config = ConfigDict(frozen=True)

    alphabet_size: int = Field(..., ge=1, description="Number of symbols")
    matrix: Tuple[Tuple[int, ...], ...] = Field(..., description="Allowed transitions A[a][b]")
    labels: Tuple[str, ...] = Field((), description="Display name per symbol")
    provenance: str = Field("native", description="How the presentation was obtained")

    @model_validator(mode="after")
    def _check_matrix(self) -> "Sft":
        n = self.alphabet_size
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise ValueError(f"matrix must be {n}x{n}")
        if any(v not in (0, 1) for row in self.matrix for v in row):
            raise ValueError("matrix entries must be 0 or 1")
        for a in range(n):
            if not any(self.matrix[a]) or not any(self.matrix[b][a] for b in range(n)):
                raise ValueError(f"symbol {a} is stranded; build the system with essentialize()")
        if self.labels and len(self.labels) != n:
            raise ValueError("one label per symbol")
        return self

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(size=self.alphabet_size)

    @property
    def adjacency(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64)

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    def allows(self, a: int, b: int) -> bool:
        return bool(self.matrix[a][b])

    def successors(self, a: int) -> List[int]:
        return [b for b, v in enumerate(self.matrix[a]) if v]

    def predecessors(self, b: int) -> List[int]:
        return [a for a in range(self.alphabet_size) if self.matrix[a][b]]

    def first_forbidden(self, point: Point, horizon: int = 4096) -> Optional[int]:
        """Index i with (x_i, x_{i+1}) forbidden, or None."""
        if point.alphabet_size != self.alphabet_size:
            return 0
        if isinstance(point, EpPoint):
            horizon = len(point.preperiod) + len(point.cycle) + 1
        word = point.word(0, horizon)
        for i in range(len(word) - 1):
            if not self.matrix[word[i]][word[i + 1]]:
                return i
        return None

    def is_admissible(self, point: Point, horizon: int = 4096) -> bool:
        """Exact for eventually periodic points, checked to `horizon` otherwise."""
        return self.first_forbidden(point, horizon) is None

    def check_admissible(self, point: Point, horizon: int = 4096) -> None:
        position = self.first_forbidden(point, horizon)
        if position is not None:
            raise InadmissiblePoint(f"point {point} leaves the system at index {position}", position)


class GraphAnalysis(BaseModel):
    """Structure of the transition graph."""

    sccs: List[List[int]] = Field(..., description="Strongly connected components")
    irreducible: bool = Field(..., description="Graph is strongly connected")
    period: Optional[int] = Field(None, description="gcd of cycle lengths (irreducible graphs)")
    cyclic_classes: List[List[int]] = Field(default_factory=list, description="C_0 .. C_{q-1} in cyclic order")
    diameter: Optional[int] = Field(None, description="Longest shortest path (irreducible graphs)")


class BlockCoder(BaseModel):
    """
    Point recoder between an original SFT and a block presentation.

    New symbol t of a point stands for the original word of width `width`
    starting at index t*step: step 1 for higher-block presentations, step p
    for the presentation of sigma^p.
    """

    model_config = ConfigDict(frozen=True)

    blocks: Tuple[Word, ...] = Field(..., description="Original word per new symbol")
    width: int = Field(..., ge=1)
    step: int = Field(..., ge=1)
    source_alphabet_size: int = Field(..., ge=1)

    @property
    def target_alphabet_size(self) -> int:
        return len(self.blocks)

    def _index(self) -> dict:
        return {block: i for i, block in enumerate(self.blocks)}

    def encode(self, point: EpPoint) -> EpPoint:
        """Recode an original eventually periodic point."""
        index = self._index()
        pre_len = -(-len(point.preperiod) // self.step)
        cyc_len = math.lcm(len(point.cycle), self.step) // self.step

        def symbol(t: int) -> int:
            block = point.word(t * self.step, self.width)
            if block not in index:
                raise InadmissiblePoint(f"block {format_word(block)} at index {t * self.step} is not allowed", t * self.step)
            return index[block]

        return EpPoint(
            preperiod=[symbol(t) for t in range(pre_len)],
            cycle=[symbol(t) for t in range(pre_len, pre_len + cyc_len)],
            alphabet_size=self.target_alphabet_size,
        )

    def _spell(self, symbols: Sequence[int]) -> Word:
        out: List[int] = []
        for s in symbols:
            out.extend(self.blocks[s][:self.step])
        return tuple(out)

    def decode(self, point: Union[EpPoint, ScheduledPoint]) -> Union[EpPoint, ScheduledPoint]:
        """Map a recoded point back to the original alphabet."""
        if isinstance(point, EpPoint):
            return EpPoint(
                preperiod=self._spell(point.preperiod),
                cycle=self._spell(point.cycle),
                alphabet_size=self.source_alphabet_size,
            )

        def plan(k: int) -> PlanBlock:
            block = point.block(k)
            return PlanBlock(
                source=self.decode(block.source),
                offset=block.offset * self.step,
                length=block.length * self.step,
            )

        return ScheduledPoint(plan, self.source_alphabet_size, f"decoded[{point.description}]")


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

@log_function_call
def essentialize(
    matrix: Sequence[Sequence[int]],
    labels: Optional[Sequence[str]] = None,
    provenance: str = "native",
) -> Sft:
    """
    Remove stranded symbols until every symbol has a successor and a predecessor.

    Args:
        matrix: Square 0/1 matrix
        labels: Optional display names, kept for surviving symbols
        provenance: Note stored on the result

    Returns:
        Essential Sft
    """
    a = np.array(matrix, dtype=np.int64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise PreconditionViolation("transition matrix must be square")
    if not np.isin(a, (0, 1)).all():
        raise PreconditionViolation("transition matrix must be 0/1")

    keep = list(range(a.shape[0]))
    while True:
        sub = a[np.ix_(keep, keep)]
        alive = [k for k, i in enumerate(keep) if sub[k].any() and sub[:, k].any()]
        if len(alive) == len(keep):
            break
        keep = [keep[k] for k in alive]
        if not keep:
            break
    if not keep:
        raise EmptySubshift("no symbol survives essentialization")

    names = tuple(labels[i] for i in keep) if labels else tuple(str(i) for i in keep)
    if len(keep) < a.shape[0]:
        logger.info(f"Essentialization kept {len(keep)} of {a.shape[0]} symbols")
    sub = a[np.ix_(keep, keep)]
    return Sft(
        alphabet_size=len(keep),
        matrix=tuple(tuple(int(v) for v in row) for row in sub),
        labels=names,
        provenance=provenance,
    )


def full_shift(k: int = 2) -> Sft:
    """Full shift on k symbols."""
    return essentialize([[1] * k for _ in range(k)], provenance=f"full_shift({k})")


def _contains_forbidden(word: Word, forbidden: Sequence[Word]) -> bool:
    n = len(word)
    for f in forbidden:
        m = len(f)
        for i in range(n - m + 1):
            if word[i:i + m] == f:
                return True
    return False


@log_function_call
def higher_block_recode(
    forbidden_words: Sequence[Union[str, Sequence[int]]],
    alphabet_size: int = 2,
) -> Tuple[Sft, BlockCoder]:
    """
    One-step presentation of the SFT defined by forbidden words.

    Symbols are the allowed words of length m-1 (m the longest forbidden
    length, at least 2); u -> v is allowed when u and v overlap and u.v[-1]
    avoids every forbidden word.

    Returns:
        (Sft, BlockCoder) pair; the coder translates points of the original
        shift to the presentation and back
    """
    forbidden = [
        tuple(int(ch) for ch in w) if isinstance(w, str) else tuple(w)
        for w in forbidden_words
    ]
    for w in forbidden:
        if not w:
            raise PreconditionViolation("forbidden words must be nonempty")
        Alphabet(size=alphabet_size).validate_word(w)

    m = max([len(w) for w in forbidden] + [2])
    width = m - 1
    vertices = [
        w for w in product(range(alphabet_size), repeat=width)
        if not _contains_forbidden(w, forbidden)
    ]
    index = {w: i for i, w in enumerate(vertices)}
    matrix = [[0] * len(vertices) for _ in vertices]
    for u in vertices:
        for b in range(alphabet_size):
            v = u[1:] + (b,)
            if v in index and not _contains_forbidden(u + (b,), forbidden):
                matrix[index[u]][index[v]] = 1

    if not vertices:
        raise EmptySubshift("every word of length m-1 is forbidden")
    labels = [format_word(w) for w in vertices]
    sft = essentialize(matrix, labels, provenance=f"recoded({width + 1}-step)" if forbidden else "native")
    kept = {label: vertices[i] for i, label in enumerate(labels)}
    blocks = tuple(kept[label] for label in sft.labels)
    coder = BlockCoder(blocks=blocks, width=width, step=1, source_alphabet_size=alphabet_size)
    return sft, coder


# ---------------------------------------------------------------------------
# Graph analyses
# ---------------------------------------------------------------------------

def _tarjan(s: Sft) -> List[List[int]]:
    """Strongly connected components, iterative Tarjan."""
    index_of: dict = {}
    lowlink: dict = {}
    on_stack: set = set()
    stack: List[int] = []
    sccs: List[List[int]] = []
    counter = 0

    for root in range(s.alphabet_size):
        if root in index_of:
            continue
        work = [(root, iter(s.successors(root)))]
        index_of[root] = lowlink[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, children = work[-1]
            advanced = False
            for w in children:
                if w not in index_of:
                    index_of[w] = lowlink[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(s.successors(w))))
                    advanced = True
                    break
                if w in on_stack:
                    lowlink[v] = min(lowlink[v], index_of[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
            if lowlink[v] == index_of[v]:
                component = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    component.append(w)
                    if w == v:
                        break
                sccs.append(sorted(component))
    return sorted(sccs)


def _bfs_levels(s: Sft, source: int) -> List[Optional[int]]:
    levels: List[Optional[int]] = [None] * s.alphabet_size
    levels[source] = 0
    frontier = [source]
    while frontier:
        nxt = []
        for u in frontier:
            for v in s.successors(u):
                if levels[v] is None:
                    levels[v] = levels[u] + 1
                    nxt.append(v)
        frontier = nxt
    return levels


@lru_cache(maxsize=256)
def analyze(s: Sft) -> GraphAnalysis:
    """SCCs, irreducibility, period, cyclic classes and diameter."""
    sccs = _tarjan(s)
    irreducible = len(sccs) == 1
    if not irreducible:
        return GraphAnalysis(sccs=sccs, irreducible=False)

    levels = _bfs_levels(s, 0)
    q = 0
    for u in range(s.alphabet_size):
        for v in s.successors(u):
            q = math.gcd(q, levels[u] + 1 - levels[v])
    q = abs(q) or 1
    classes = [[v for v in range(s.alphabet_size) if levels[v] % q == i] for i in range(q)]

    diameter = 0
    for u in range(s.alphabet_size):
        diameter = max(diameter, max(lv for lv in _bfs_levels(s, u) if lv is not None))

    return GraphAnalysis(
        sccs=sccs,
        irreducible=True,
        period=q,
        cyclic_classes=classes,
        diameter=diameter,
    )


def is_transitive(s: Sft) -> bool:
    """Topological transitivity of an SFT is irreducibility of its graph."""
    return analyze(s).irreducible


def require_irreducible(s: Sft) -> GraphAnalysis:
    analysis = analyze(s)
    if not analysis.irreducible:
        raise NotIrreducible(f"transition graph has {len(analysis.sccs)} strongly connected components")
    return analysis


def graph_period(s: Sft) -> Tuple[int, List[List[int]]]:
    """Period q and cyclic classes C_0 .. C_{q-1} of an irreducible SFT."""
    analysis = require_irreducible(s)
    return analysis.period, analysis.cyclic_classes


def is_mixing(s: Sft) -> bool:
    """Irreducible and aperiodic."""
    analysis = analyze(s)
    return analysis.irreducible and analysis.period == 1


def is_weakly_mixing(s: Sft) -> bool:
    # For SFTs weak mixing and mixing coincide
    return is_mixing(s)


def is_single_cycle(s: Sft) -> bool:
    """Irreducible graph in which every symbol has exactly one successor."""
    return analyze(s).irreducible and all(len(s.successors(a)) == 1 for a in range(s.alphabet_size))


def fixed_points(s: Sft) -> List[EpPoint]:
    return [EpPoint.constant(a, s.alphabet_size) for a in range(s.alphabet_size) if s.allows(a, a)]


def has_dense_periodic_points(s: Sft) -> bool:
    """Periodic points are dense iff every allowed edge lies inside one SCC."""
    component = {}
    for k, scc in enumerate(analyze(s).sccs):
        for v in scc:
            component[v] = k
    return all(
        component[a] == component[b]
        for a in range(s.alphabet_size)
        for b in s.successors(a)
    )


def matrix_power_trace(s: Sft, p: int) -> int:
    """trace(A^p) in exact integer arithmetic."""
    a = np.array(s.matrix, dtype=object)
    result = np.identity(s.alphabet_size, dtype=object)
    for _ in range(p):
        result = result.dot(a)
    return int(sum(result[i][i] for i in range(s.alphabet_size)))


def iter_periodic_points(s: Sft, p: int) -> Iterator[EpPoint]:
    """Every point fixed by sigma^p, as the closed walk of length p it spells."""
    if p < 1:
        raise PreconditionViolation("period must be at least 1")
    for start in range(s.alphabet_size):
        stack: List[Tuple[int, ...]] = [(start,)]
        while stack:
            walk = stack.pop()
            if len(walk) == p:
                if s.allows(walk[-1], start):
                    yield EpPoint(cycle=walk, alphabet_size=s.alphabet_size)
                continue
            for b in reversed(s.successors(walk[-1])):
                stack.append(walk + (b,))


@log_function_call
def periodic_points(s: Sft, p: int) -> Tuple[int, Iterator[EpPoint]]:
    """
    Points of sigma-period dividing p.

    Returns:
        (trace(A^p), lazy enumeration of the closed walks of length p)
    """
    if p < 1:
        raise PreconditionViolation("period must be at least 1")
    return matrix_power_trace(s, p), iter_periodic_points(s, p)


def _perron_root(block: np.ndarray) -> float:
    """Perron root of an irreducible nonnegative matrix by Collatz-Wielandt iteration on A + I."""
    m = block.astype(float) + np.identity(block.shape[0])
    v = np.ones(block.shape[0])
    lo = hi = float("nan")
    for _ in range(ENTROPY_MAX_ITERATIONS):
        w = m @ v
        ratios = w / v
        lo, hi = float(ratios.min()), float(ratios.max())
        v = w / w.max()
        if hi - lo <= ENTROPY_TOLERANCE * hi:
            break
    else:
        logger.warning("Power iteration hit the iteration cap")
    if not (v > 0).all():
        raise ArithmeticError("Perron vector is not strictly positive")
    return (lo + hi) / 2 - 1


def spectral_radius(s: Sft) -> float:
    """Largest Perron root over the nontrivial strongly connected components."""
    a = s.adjacency
    radius = 0.0
    for scc in analyze(s).sccs:
        block = a[np.ix_(scc, scc)]
        if len(scc) == 1 and block[0, 0] == 0:
            continue
        radius = max(radius, _perron_root(block))

    if s.alphabet_size <= 4:
        # Cross-check with the characteristic polynomial
        roots = np.roots(np.poly(a.astype(float)))
        check = float(max(abs(r) for r in roots)) if len(roots) else 0.0
        if abs(check - radius) > 1e-9 * max(1.0, radius):
            logger.warning(f"Spectral radius {radius} disagrees with characteristic polynomial root {check}")
    return radius


@log_function_call
def entropy(s: Sft) -> float:
    """Topological entropy log(lambda(A))."""
    radius = spectral_radius(s)
    return math.log(radius) if radius > 0 else 0.0


# ---------------------------------------------------------------------------
# Powers, paths and bridges
# ---------------------------------------------------------------------------

def allowed_words(s: Sft, length: int, starts: Optional[Sequence[int]] = None) -> List[Word]:
    """All allowed words of the given length, in lexicographic order."""
    if length < 1:
        raise PreconditionViolation("length must be positive")
    words: List[Word] = [(a,) for a in (starts if starts is not None else range(s.alphabet_size))]
    for _ in range(length - 1):
        words = [w + (b,) for w in words for b in s.successors(w[-1])]
    return sorted(words)


@log_function_call
def power_system(s: Sft, p: int, cyclic_class: Optional[int] = None) -> Tuple[Sft, BlockCoder]:
    """
    Presentation of sigma^p on allowed p-blocks.

    Args:
        s: The SFT
        p: Power
        cyclic_class: Restrict to blocks starting in C_i (irreducible SFTs)

    Returns:
        (Sft, BlockCoder) pair
    """
    if p < 1:
        raise PreconditionViolation("power must be at least 1")
    starts = None
    if cyclic_class is not None:
        q, classes = graph_period(s)
        starts = classes[cyclic_class % q]

    blocks = allowed_words(s, p, starts)
    matrix = [[1 if s.allows(u[-1], v[0]) else 0 for v in blocks] for u in blocks]
    labels = [format_word(w) for w in blocks]
    provenance = f"power({p})" + (f" on class C{cyclic_class}" if cyclic_class is not None else "")
    power = essentialize(matrix, labels, provenance=provenance)
    kept = {label: blocks[i] for i, label in enumerate(labels)}
    coder = BlockCoder(
        blocks=tuple(kept[label] for label in power.labels),
        width=p,
        step=p,
        source_alphabet_size=s.alphabet_size,
    )
    return power, coder


def shortest_path(s: Sft, source: int, target: int) -> Optional[Word]:
    """Shortest w with source.w.target an allowed path of at least one edge, or None."""
    parent: dict = {}
    frontier = []
    for b in s.successors(source):
        if b not in parent:
            parent[b] = None
            frontier.append(b)
    while target not in parent and frontier:
        nxt = []
        for u in frontier:
            for v in s.successors(u):
                if v not in parent:
                    parent[v] = u
                    nxt.append(v)
        frontier = nxt
    if target not in parent:
        return None
    path = []
    node = parent[target]
    while node is not None:
        path.append(node)
        node = parent[node]
    return tuple(reversed(path))


def connecting_word(s: Sft, source: int, target: int) -> Word:
    """Shortest w such that source.w.target is an allowed path (at least one edge)."""
    require_irreducible(s)
    return shortest_path(s, source, target)


def cycle_through(s: Sft, symbol: int) -> Optional[EpPoint]:
    """Periodic point of least period whose orbit starts at `symbol`, or None."""
    loop = shortest_path(s, symbol, symbol)
    if loop is None:
        return None
    return EpPoint(cycle=(symbol,) + loop, alphabet_size=s.alphabet_size)


def bridge_word(s: Sft, source: int, target: int, steps: int) -> Optional[Word]:
    """
    A word w of length steps-1 with source.w.target an allowed path of
    exactly `steps` edges, or None. Picks the lexicographically smallest
    predecessor at each backward step.
    """
    if steps < 1:
        raise PreconditionViolation("a bridge needs at least one edge")
    a = s.adjacency.astype(bool)
    reach = [np.zeros(s.alphabet_size, dtype=bool)]
    reach[0][source] = True
    for _ in range(steps):
        reach.append((a.T.astype(np.int64) @ reach[-1].astype(np.int64)) > 0)
    if not reach[steps][target]:
        return None
    word: List[int] = []
    current = target
    for t in range(steps - 1, 0, -1):
        current = next(u for u in range(s.alphabet_size) if reach[t][u] and a[u, current])
        word.append(current)
    return tuple(reversed(word))


@lru_cache(maxsize=256)
def primitivity_exponent(s: Sft) -> Optional[int]:
    """Least g with A^g entrywise positive, or None for non-mixing systems."""
    if not is_mixing(s):
        return None
    a = s.adjacency.astype(bool).astype(np.int64)
    power = a.copy()
    n = s.alphabet_size
    for g in range(1, (n - 1) ** 2 + 2):
        if (power > 0).all():
            return g
        power = ((power @ a) > 0).astype(np.int64)
    return None


class DevaneyPackage(BaseModel):
    """Transitivity and dense periodic points (sensitivity follows for infinite systems)."""

    transitive: bool
    dense_periodic_points: bool
    infinite: bool = Field(..., description="Not a single periodic orbit")

    @property
    def holds(self) -> bool:
        return self.transitive and self.dense_periodic_points and self.infinite


def devaney_package(s: Sft) -> DevaneyPackage:
    return DevaneyPackage(
        transitive=is_transitive(s),
        dense_periodic_points=has_dense_periodic_points(s),
        infinite=not is_single_cycle(s) and is_transitive(s),
    )

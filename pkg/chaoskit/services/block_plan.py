"""
Block plans: tuple-level schedules of segments.

A plan lists segments; in each segment every coordinate reads a block of an
eventually periodic source. The scrambling schedule starts with a prefix,
then alternates ASYMPTOTIC blocks (all coordinates read one common source)
with DISTAL blocks (a group of coordinates reads pairwise separated
targets). Blocks are joined by bridge segments of a fixed length, and every
body is longer than k times everything before it.
"""

import threading
from bisect import bisect_right
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from chaoskit.errors import PreconditionViolation
from chaoskit.models.base import BlockMode
from chaoskit.services.sft import BlockCoder, Sft, bridge_word
from chaoskit.services.symbolic import EpPoint, PlanBlock, ScheduledPoint, Word
from chaoskit.utils.logging import get_logger

# Initialize logger
logger = get_logger(__name__)


class Segment(BaseModel):
    """Stretch [start, start+length) in which coordinate i reads sources[i] from offsets[i]."""

    model_config = ConfigDict(frozen=True)

    index: int = Field(..., ge=0)
    mode: BlockMode
    block: int = Field(..., ge=0, description="0 for the prefix, k for block k")
    start: int = Field(..., ge=0)
    length: int = Field(..., ge=1)
    sources: Tuple[EpPoint, ...]
    offsets: Tuple[int, ...]
    group: Optional[Tuple[int, ...]] = Field(None, description="Coordinates served by a DISTAL body")

    @property
    def end(self) -> int:
        return self.start + self.length

    def shifted_sources(self) -> List[EpPoint]:
        return [src.shift(off) for src, off in zip(self.sources, self.offsets)]

    def block_for(self, coord: int) -> PlanBlock:
        return PlanBlock(source=self.sources[coord], offset=self.offsets[coord], length=self.length)

    def last_symbol(self, coord: int) -> int:
        return self.sources[coord].symbol_at(self.offsets[coord] + self.length - 1)

    def decode(self, coder: BlockCoder) -> "Segment":
        step = coder.step
        return Segment(
            index=self.index,
            mode=self.mode,
            block=self.block,
            start=self.start * step,
            length=self.length * step,
            sources=tuple(coder.decode(src) for src in self.sources),
            offsets=tuple(off * step for off in self.offsets),
            group=self.group,
        )


class BlockPlan:
    """
    Lazily generated segment list shared by the coordinates of a tuple.

    `make(index, previous)` returns segment `index` given the segments
    before it. Segments are cached; the cache is guarded by a lock.
    """

    def __init__(
        self,
        make: Callable[[int, List[Segment]], Segment],
        size: int,
        alphabet_size: int,
        description: str,
        common_source: EpPoint,
        targets: Sequence[EpPoint],
        groups: Sequence[Tuple[int, ...]],
        bridge_length: int,
        step: int = 1,
    ):
        self._make = make
        self.size = size
        self.alphabet_size = alphabet_size
        self.description = description
        self.common_source = common_source
        self.targets = list(targets)
        self.groups = [tuple(g) for g in groups]
        self.bridge_length = bridge_length
        # Original symbols per plan symbol (q after decoding a power presentation)
        self.step = step
        self._segments: List[Segment] = []
        self._starts: List[int] = []
        self._lock = threading.RLock()
        self._points: Optional[List[ScheduledPoint]] = None

    def __repr__(self) -> str:
        return f"BlockPlan({self.description!r}, size={self.size})"

    @property
    def segments_per_block(self) -> int:
        return 2 if self.bridge_length else 1

    def segment(self, index: int) -> Segment:
        with self._lock:
            while len(self._segments) <= index:
                segment = self._make(len(self._segments), self._segments)
                self._segments.append(segment)
                self._starts.append(segment.start)
            return self._segments[index]

    def segments_before(self, n: int) -> Iterator[Segment]:
        """Segments with start < n, in order."""
        index = 0
        while True:
            segment = self.segment(index)
            if segment.start >= n:
                return
            yield segment
            index += 1

    def segment_at(self, position: int) -> Segment:
        index = 0
        while self.segment(index).end <= position:
            index += 1
        with self._lock:
            return self._segments[bisect_right(self._starts, position) - 1]

    def body(self, k: int) -> Segment:
        """Body segment of block k >= 1."""
        if k < 1:
            raise PreconditionViolation("blocks are numbered from 1")
        return self.segment(k * self.segments_per_block)

    def block_end(self, k: int) -> int:
        return self.body(k).end

    def block_start(self, k: int) -> int:
        """S_{k-1}: where block k (bridge included) begins."""
        return self.segment((k - 1) * self.segments_per_block + 1).start

    def rows(self, start: int, length: int) -> np.ndarray:
        """Symbols of every coordinate on [start, start+length), stitched across segments."""
        out = np.empty((self.size, length), dtype=np.int32)
        position, filled = start, 0
        while filled < length:
            segment = self.segment_at(position)
            take = min(segment.end, start + length) - position
            for i in range(self.size):
                offset = segment.offsets[i] + position - segment.start
                out[i, filled:filled + take] = segment.sources[i].word(offset, take)
            position += take
            filled += take
        return out

    def point(self, coord: int) -> ScheduledPoint:
        if not 0 <= coord < self.size:
            raise PreconditionViolation(f"coordinate {coord} outside plan of size {self.size}")
        return self.points()[coord]

    def points(self) -> List[ScheduledPoint]:
        with self._lock:
            if self._points is None:
                self._points = [
                    ScheduledPoint(
                        (lambda k, i=i: self.segment(k).block_for(i)),
                        self.alphabet_size,
                        f"{self.description}[{i}]",
                        plan_ref=(self, i),
                    )
                    for i in range(self.size)
                ]
            return self._points

    def decode(self, coder: BlockCoder, alphabet_size: int) -> "BlockPlan":
        """The plan read in the original alphabet of a block presentation."""
        parent = self
        return BlockPlan(
            lambda index, previous: parent.segment(index).decode(coder),
            size=self.size,
            alphabet_size=alphabet_size,
            description=f"decoded({self.description})",
            common_source=coder.decode(self.common_source),
            targets=[coder.decode(t) for t in self.targets],
            groups=self.groups,
            bridge_length=self.bridge_length,
            step=self.step * coder.step,
        )


def _body_sources(
    k: int,
    size: int,
    common_source: EpPoint,
    targets: Sequence[EpPoint],
    groups: Sequence[Tuple[int, ...]],
) -> Tuple[BlockMode, Tuple[EpPoint, ...], Optional[Tuple[int, ...]]]:
    if k % 2 == 1:
        return BlockMode.ASYMPTOTIC, (common_source,) * size, None
    group = groups[(k // 2 - 1) % len(groups)]
    sources = tuple(
        targets[group.index(i)] if i in group else common_source
        for i in range(size)
    )
    return BlockMode.DISTAL, sources, group


def scrambling_plan(
    s: Sft,
    prefixes: Sequence[Word],
    common_source: EpPoint,
    targets: Sequence[EpPoint],
    groups: Sequence[Tuple[int, ...]],
    bridge_length: int,
    description: str = "scrambled",
) -> BlockPlan:
    """
    Alternating ASYMPTOTIC / DISTAL schedule with L_k = k * S_{k-1} + 1.

    Args:
        s: Mixing SFT the points live in
        prefixes: One word per coordinate, all of the same length
        common_source: Periodic point copied by every coordinate in ASYMPTOTIC bodies
        targets: Pairwise separated periodic points for DISTAL bodies
        groups: DISTAL block j serves groups[j mod len(groups)]
        bridge_length: Length of every bridge (every a -> b has a path of bridge_length+1 edges)

    Returns:
        BlockPlan over the given coordinates
    """
    size = len(prefixes)
    depth = len(prefixes[0]) if prefixes else 0
    if size < 2 or depth < 1 or any(len(p) != depth for p in prefixes):
        raise PreconditionViolation("need at least two nonempty prefixes of one length")
    if not groups or any(len(g) > len(targets) for g in groups):
        raise PreconditionViolation("every group needs one target per member")
    per_block = 2 if bridge_length else 1

    def make(index: int, previous: List[Segment]) -> Segment:
        if index == 0:
            return Segment(
                index=0,
                mode=BlockMode.PREFIX,
                block=0,
                start=0,
                length=depth,
                sources=tuple(EpPoint.from_word(p, s.alphabet_size) for p in prefixes),
                offsets=(0,) * size,
            )
        k = (index + per_block - 1) // per_block
        mode, sources, group = _body_sources(k, size, common_source, targets, groups)
        last = previous[-1]
        if per_block == 2 and index % 2 == 1:
            bridges = []
            for i in range(size):
                word = bridge_word(s, last.last_symbol(i), sources[i].symbol_at(0), bridge_length + 1)
                if word is None:
                    raise PreconditionViolation(f"no bridge of length {bridge_length} into block {k}")
                bridges.append(EpPoint.from_word(word, s.alphabet_size))
            return Segment(
                index=index,
                mode=BlockMode.BRIDGE,
                block=k,
                start=last.end,
                length=bridge_length,
                sources=tuple(bridges),
                offsets=(0,) * size,
            )
        if per_block == 1:
            for i in range(size):
                if not s.allows(last.last_symbol(i), sources[i].symbol_at(0)):
                    raise PreconditionViolation(f"block {k} cannot follow without a bridge")
        history = last.end - (bridge_length if per_block == 2 else 0)
        return Segment(
            index=index,
            mode=mode,
            block=k,
            start=last.end,
            length=k * history + 1,
            sources=sources,
            offsets=(0,) * size,
            group=group,
        )

    logger.debug(f"Scrambling plan: {size} coordinates, prefix {depth}, bridges {bridge_length}")
    return BlockPlan(
        make,
        size=size,
        alphabet_size=s.alphabet_size,
        description=description,
        common_source=common_source,
        targets=targets,
        groups=groups,
        bridge_length=bridge_length,
    )


def schedule_dominates(plan: BlockPlan, blocks: int) -> bool:
    """L_k >= k * S_{k-1} for the first `blocks` blocks."""
    return all(
        plan.body(k).length >= k * plan.block_start(k)
        for k in range(1, blocks + 1)
    )


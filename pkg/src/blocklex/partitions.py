"""Partitions of an ordered vertex set into rank segments: the standard
monotonic partition, atomic partitions, and validation of the general
isoperimetric-partition conditions.

A partition lives over a total order and splits the ranks 1..n into
contiguous segments [a_i, b_i].  The two conditions checked by the
validator are (1) each segment induces a graph with nested solutions whose
induced order is optimal for it, and (2) every vertex of segment i sends
exactly delta(a_i) edges to the union of the earlier segments, where delta
is the delta-sequence of the ambient graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .graphs import Graph, VertexSet, induced_subgraph
from .orders import TotalOrder
from .solver import (
    DeltaSequence,
    Profile,
    delta_sequence,
    exact_profile,
    verify_order_optimal,
)

__all__ = [
    "Partition",
    "standard_monotonic_partition",
    "atomic_partition",
    "segment_subgraph",
    "segment_delta",
    "validate_isoperimetric_partition",
    "is_non_decreasing",
    "is_regular_partition",
    "segment_delta_shift",
]


@dataclass(frozen=True)
class Partition:
    """Ordered rank segments [a_i, b_i] covering 1..n over a total order."""

    order: TotalOrder
    segments: tuple[tuple[int, int], ...]
    kind: str = "custom"

    def __post_init__(self):
        n = self.order.n
        if not self.segments:
            raise ValueError("partition needs at least one segment")
        expect = 1
        for a, b in self.segments:
            if a != expect or b < a:
                raise ValueError(
                    f"segments must be contiguous and ordered; got {self.segments}"
                )
            expect = b + 1
        if expect != n + 1:
            raise ValueError("segments do not cover all ranks")

    @property
    def n(self) -> int:
        return self.order.n

    @property
    def num_segments(self) -> int:
        return len(self.segments)

    @property
    def boundaries(self) -> tuple[int, ...]:
        """Segment end ranks b_1 < b_2 < ... < b_k = n."""
        return tuple(b for _, b in self.segments)

    @property
    def start_ranks(self) -> tuple[int, ...]:
        return tuple(a for a, _ in self.segments)

    def start_vertices(self) -> tuple[int, ...]:
        """The start set: the first vertex of each segment."""
        return tuple(self.order.vertex_at(a) for a, _ in self.segments)

    def segment_vertices(self, i: int) -> VertexSet:
        a, b = self.segments[i]
        return self.order.segment(a, b)

    def segment_of_rank(self, r: int) -> int:
        for i, (a, b) in enumerate(self.segments):
            if a <= r <= b:
                return i
        raise ValueError(f"rank {r} out of range")

    def to_json(self) -> dict:
        return {"order": self.order.ranks.tolist(), "boundaries": list(self.boundaries)}

    @classmethod
    def from_json(cls, data: dict, kind: str = "custom") -> "Partition":
        order = TotalOrder(data["order"])
        bounds = [int(b) for b in data["boundaries"]]
        segments = []
        a = 1
        for b in bounds:
            segments.append((a, b))
            a = b + 1
        return cls(order, tuple(segments), kind)

    @classmethod
    def from_boundaries(
        cls, order: TotalOrder, boundaries: Sequence[int], kind: str = "custom"
    ) -> "Partition":
        segments = []
        a = 1
        for b in boundaries:
            segments.append((a, int(b)))
            a = int(b) + 1
        return cls(order, tuple(segments), kind)


def standard_monotonic_partition(delta: DeltaSequence) -> Partition:
    """Unique split of the delta-sequence into maximal runs that increase
    by exactly one at each step."""
    if delta.source_order is None:
        raise ValueError("delta-sequence must carry its source order")
    vals = delta.values
    n = len(vals)
    segments = []
    a = 1
    for i in range(1, n):
        if vals[i] - vals[i - 1] != 1:
            segments.append((a, i))
            a = i + 1
    segments.append((a, n))
    return Partition(delta.source_order, tuple(segments), "standard_monotonic")


def atomic_partition(order: TotalOrder) -> Partition:
    return Partition(
        order, tuple((r, r) for r in range(1, order.n + 1)), "atomic"
    )


def segment_subgraph(
    g: Graph, p: Partition, i: int
) -> tuple[Graph, TotalOrder, list[int]]:
    """Graph induced by segment i, relabeled in rank order.

    Returns (subgraph, induced order, old vertex ids).  The induced order
    is the identity on the relabeled vertices because the relabeling
    follows the ambient order.
    """
    a, b = p.segments[i]
    old = [p.order.vertex_at(r) for r in range(a, b + 1)]
    sub, _ = induced_subgraph(g, old)
    return sub, TotalOrder.identity(len(old)), old


def segment_delta(g: Graph, p: Partition, i: int, cap: int = 24) -> DeltaSequence:
    """Delta-sequence of the segment-induced subgraph under its induced
    order (exact, by full enumeration on the small subgraph)."""
    sub, order, _ = segment_subgraph(g, p, i)
    prof = exact_profile(sub, "full", cap=cap, with_witnesses=False)
    return delta_sequence(prof, order)


def _graph_delta(g: Graph, profile: Optional[Profile], cap: int) -> DeltaSequence:
    if profile is None:
        profile = exact_profile(g, "full", cap=cap, with_witnesses=False)
    return delta_sequence(profile)


def validate_isoperimetric_partition(
    g: Graph,
    p: Partition,
    *,
    profile: Optional[Profile] = None,
    cap: int = 24,
) -> tuple[bool, list[str]]:
    """Check the two isoperimetric-partition conditions; returns
    (ok, diagnostics).  Requires (and checks) that the partition's own
    order is optimal for g."""
    diags: list[str] = []
    if profile is None:
        profile = exact_profile(g, "full", cap=cap, with_witnesses=False)
    ok_order, bad_m = verify_order_optimal(g, p.order, profile)
    if not ok_order:
        diags.append(f"partition order is not optimal for the graph (fails at m={bad_m})")
        return False, diags
    delta = delta_sequence(profile)
    ok = True
    for i, (a, b) in enumerate(p.segments):
        sub, sub_order, old = segment_subgraph(g, p, i)
        sub_prof = exact_profile(sub, "full", cap=cap, with_witnesses=False)
        seg_ok, seg_bad = verify_order_optimal(sub, sub_order, sub_prof)
        if not seg_ok:
            ok = False
            diags.append(
                f"segment {i + 1} [{a},{b}]: induced order not optimal for the "
                f"induced graph (fails at m={seg_bad})"
            )
        # condition 2: backward edges of each vertex equal delta at the start
        earlier = p.order.initial_segment(a - 1) if a > 1 else VertexSet.empty(g.n)
        want = delta.at_rank(a)
        for v in old:
            got = int(np.count_nonzero(earlier.mask[g.neighbors[v]]))
            if got != want:
                ok = False
                diags.append(
                    f"segment {i + 1} [{a},{b}]: vertex {v} sends {got} edges to "
                    f"earlier segments, expected delta({a}) = {want}"
                )
    return ok, diags


def is_non_decreasing(g: Graph, p: Partition, cap: int = 24) -> bool:
    """Each segment's induced delta-sequence is non-decreasing."""
    for i in range(p.num_segments):
        vals = segment_delta(g, p, i, cap).values
        if any(vals[j + 1] < vals[j] for j in range(len(vals) - 1)):
            return False
    return True


def is_regular_partition(g: Graph, p: Partition, cap: int = 24) -> bool:
    """First and last segments have identical induced delta-sequences."""
    first = segment_delta(g, p, 0, cap).values
    last = segment_delta(g, p, p.num_segments - 1, cap).values
    return first == last


def segment_delta_shift(
    g: Graph,
    p: Partition,
    i: int,
    x: int,
    y: int,
    *,
    profile: Optional[Profile] = None,
    cap: int = 24,
) -> tuple[int, int]:
    """Both sides of the within-segment delta-shift identity for vertices
    x, y of segment i: the ambient delta difference and the induced
    subgraph's delta difference.  They must be equal for isoperimetric
    partitions."""
    a, b = p.segments[i]
    rx, ry = p.order.rank(x), p.order.rank(y)
    if not (a <= rx <= b and a <= ry <= b):
        raise ValueError("both vertices must lie in the given segment")
    ambient = _graph_delta(g, profile, cap)
    lhs = ambient.at_rank(rx) - ambient.at_rank(ry)
    seg = segment_delta(g, p, i, cap)
    rhs = seg.at_rank(rx - a + 1) - seg.at_rank(ry - a + 1)
    return lhs, rhs

"""Tree-sequences and color-driven tree augmentation.

A tree-sequence is an ordered list of vertices where every vertex after the
first is attached to an earlier one by its own edge. The list order is the
linear order used throughout the engine. An augmentation step appends a
boundary edge whose color is missing somewhere in the tree; a closure
repeats this until no such edge is left.
"""

from __future__ import annotations

import random
from typing import Iterable, Iterator

from .coloring import PartialColoring, is_elementary, lowest_color
from .graph import Multigraph


class TreeSequence:
    """Vertices ``y_0, y_1, ...`` with ``edges[i]`` joining ``y_i`` to an earlier vertex.

    ``edges[0]`` is None. Segment ``T(y_j)`` is ``prefix(j + 1)``.
    """

    __slots__ = ("vertices", "edges", "pos")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[int | None] = ()) -> None:
        self.vertices: list[int] = list(vertices)
        self.edges: list[int | None] = list(edges)
        if len(self.edges) != len(self.vertices):
            raise ValueError("one edge slot per vertex is required")
        self.pos: dict[int, int] = {v: i for i, v in enumerate(self.vertices)}
        if len(self.pos) != len(self.vertices):
            raise ValueError("vertices must be distinct")

    @classmethod
    def rooted(cls, root: int) -> TreeSequence:
        return cls([root], [None])

    @classmethod
    def from_edge(cls, g: Multigraph, eid: int, first: int | None = None) -> TreeSequence:
        """``(y_0, e, y_1)`` for an edge; ``first`` picks the end used as ``y_0``."""
        u, v = g.ends[eid]
        if first is None:
            first = min(u, v)
        return cls([first, g.other_end(eid, first)], [None, eid])

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: int) -> bool:
        return v in self.pos

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __repr__(self) -> str:
        return f"TreeSequence({self.vertices})"

    def copy(self) -> TreeSequence:
        return TreeSequence(self.vertices, self.edges)

    def append(self, eid: int, v: int) -> None:
        if v in self.pos:
            raise ValueError(f"vertex {v} already in the tree")
        self.pos[v] = len(self.vertices)
        self.vertices.append(v)
        self.edges.append(eid)

    def prefix(self, size: int) -> TreeSequence:
        return TreeSequence(self.vertices[:size], self.edges[:size])

    def last(self) -> int:
        return self.vertices[-1]

    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    def edge_list(self) -> list[int]:
        return [e for e in self.edges if e is not None]

    def is_valid(self, g: Multigraph) -> bool:
        """Each appended edge joins its vertex to a strictly earlier vertex."""
        for i in range(1, len(self.vertices)):
            eid = self.edges[i]
            if eid is None:
                return False
            a, b = g.ends[eid]
            v = self.vertices[i]
            if v not in (a, b):
                return False
            w = g.other_end(eid, v)
            if self.pos.get(w, len(self.vertices)) >= i:
                return False
        return True

    def attach_index(self, g: Multigraph, i: int) -> int:
        """Position of the earlier end of ``edges[i]``."""
        return self.pos[g.other_end(self.edges[i], self.vertices[i])]

    def missing_mask(self, c: PartialColoring, size: int | None = None) -> int:
        m = 0
        for v in self.vertices[: size if size is not None else len(self.vertices)]:
            m |= c.missing_mask(v)
        return m


def boundary(c: PartialColoring, verts: Iterable[int], members: set[int] | frozenset[int]) -> list[int]:
    g = c.g
    out = []
    for v in verts:
        for eid in g.incidence[v]:
            if g.other_end(eid, v) not in members:
                out.append(eid)
    out.sort()
    return out


def augment_candidates(c: PartialColoring, t: TreeSequence, allowed: int | None = None) -> list[int]:
    """Boundary edges whose color is missing in ``t`` and lies in ``allowed``.

    ``allowed`` is a color bitmask; None means every color.
    """
    miss = t.missing_mask(c)
    if allowed is not None:
        miss &= allowed
    members = t.pos.keys()
    out = []
    g = c.g
    for v in t.vertices:
        for eid in g.incidence[v]:
            col = c.color[eid]
            if col and (miss >> col) & 1 and g.other_end(eid, v) not in members:
                out.append(eid)
    out.sort()
    return out


def outside_end(c: PartialColoring, t: TreeSequence, eid: int) -> int:
    u, v = c.g.ends[eid]
    return v if u in t else u


def closure(
    c: PartialColoring,
    t: TreeSequence,
    allowed: int | None = None,
    rng: random.Random | None = None,
    on_append=None,
) -> TreeSequence:
    """Grow a copy of ``t`` by augmentation until no candidate remains.

    The smallest-id candidate is taken unless ``rng`` is given, in which case
    a random candidate is taken (the vertex set of the result is the same).
    """
    out = t.copy()
    while True:
        cands = augment_candidates(c, out, allowed)
        if not cands:
            return out
        eid = rng.choice(cands) if rng is not None else cands[0]
        v = outside_end(c, out, eid)
        out.append(eid, v)
        if on_append is not None:
            on_append(eid, v)


def elementary_or_witness(c: PartialColoring, t: TreeSequence) -> tuple[int, int, int] | None:
    return is_elementary(c, t.vertices)


def first_conflict(c: PartialColoring, t: TreeSequence, start: int = 0) -> int | None:
    """Smallest index ``i >= start`` such that ``T(y_i)`` is not elementary.

    Vertices before ``start`` are assumed elementary.
    """
    seen = 0
    for i, v in enumerate(t.vertices):
        m = c.missing_mask(v)
        if i >= start and m & seen:
            return i
        seen |= m
    return None


def conflict_color(c: PartialColoring, t: TreeSequence, i: int) -> tuple[int, int]:
    """For a conflict at index ``i``: (smallest shared color, earliest index sharing it)."""
    mi = c.missing_mask(t.vertices[i])
    for j in range(i):
        common = mi & c.missing_mask(t.vertices[j])
        if common:
            return lowest_color(common), j
    raise ValueError("no conflict at this index")

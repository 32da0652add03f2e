"""Partial proper edge colorings and the set predicates built on them.

Colors are ``1..k``; ``0`` means uncolored. For each vertex we keep the edge
holding each color and a bitmask of present colors, so missing-color queries
are a couple of integer operations. ``version`` increases on every mutation;
chains remember the version they were read at.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, TextIO, Union

from .errors import ImproperColoring, ParseError
from .graph import Multigraph

UNCOLORED = 0


def mask_to_colors(mask: int) -> list[int]:
    out = []
    c = 0
    while mask:
        if mask & 1:
            out.append(c)
        mask >>= 1
        c += 1
    return out


def lowest_color(mask: int) -> int:
    """Smallest color in a nonzero mask."""
    return (mask & -mask).bit_length() - 1


class PartialColoring:
    def __init__(self, g: Multigraph, k: int) -> None:
        if k < 0:
            raise ValueError("palette size must be nonnegative")
        self.g = g
        self.k = k
        self.color = [UNCOLORED] * g.edge_count
        self._at: list[dict[int, int]] = [dict() for _ in range(g.vertex_count)]
        self._present = [0] * g.vertex_count
        self.version = 0
        self.trace = None  # optional callable receiving trace lines

    # construction helpers

    @classmethod
    def from_assignment(cls, g: Multigraph, k: int, colors: Iterable[int]) -> PartialColoring:
        c = cls(g, k)
        for eid, col in enumerate(colors):
            if col != UNCOLORED:
                c.assign(eid, col)
        c.version = 0
        return c

    def copy(self) -> PartialColoring:
        other = PartialColoring.__new__(PartialColoring)
        other.g = self.g
        other.k = self.k
        other.color = list(self.color)
        other._at = [dict(d) for d in self._at]
        other._present = list(self._present)
        other.version = self.version
        other.trace = None
        return other

    def widened(self, k: int) -> PartialColoring:
        """Same assignment viewed in a palette of size ``k >= self.k``."""
        if k < self.k:
            raise ValueError("palette can only grow")
        other = self.copy()
        other.k = k
        other.version += 1
        return other

    # mutation

    @property
    def full_mask(self) -> int:
        return ((1 << (self.k + 1)) - 1) & ~1

    def assign(self, eid: int, col: int) -> None:
        if not 1 <= col <= self.k:
            raise ImproperColoring(f"color {col} outside palette 1..{self.k}")
        if self.color[eid] != UNCOLORED:
            raise ImproperColoring(f"edge {eid} is already colored")
        u, v = self.g.ends[eid]
        bit = 1 << col
        for w in (u, v):
            if self._present[w] & bit:
                raise ImproperColoring(f"color {col} already present at vertex {w}")
        self.color[eid] = col
        for w in (u, v):
            self._at[w][col] = eid
            self._present[w] |= bit
        self.version += 1

    def unassign(self, eid: int) -> int:
        col = self.color[eid]
        if col == UNCOLORED:
            return col
        bit = 1 << col
        for w in self.g.ends[eid]:
            del self._at[w][col]
            self._present[w] &= ~bit
        self.color[eid] = UNCOLORED
        self.version += 1
        return col

    def recolor(self, eid: int, col: int) -> None:
        old = self.unassign(eid)
        try:
            self.assign(eid, col)
        except ImproperColoring:
            if old != UNCOLORED:
                self.assign(eid, old)
            raise

    def _set_raw(self, eid: int, col: int) -> None:
        """Assign without the propriety check. Callers restore propriety."""
        self.color[eid] = col
        bit = 1 << col
        for w in self.g.ends[eid]:
            self._at[w][col] = eid
            self._present[w] |= bit

    def _clear_raw(self, eid: int) -> None:
        col = self.color[eid]
        bit = 1 << col
        for w in self.g.ends[eid]:
            if self._at[w].get(col) == eid:
                del self._at[w][col]
                self._present[w] &= ~bit
        self.color[eid] = UNCOLORED

    # queries

    def edge_at(self, v: int, col: int) -> int | None:
        """The edge at ``v`` colored ``col``, if any."""
        return self._at[v].get(col)

    def present_mask(self, v: int) -> int:
        return self._present[v]

    def missing_mask(self, v: int) -> int:
        return self.full_mask & ~self._present[v]

    def missing(self, v: int) -> frozenset[int]:
        return frozenset(mask_to_colors(self.missing_mask(v)))

    def misses(self, v: int, col: int) -> bool:
        return not (self._present[v] >> col) & 1

    def missing_of_set(self, x: Iterable[int]) -> int:
        m = 0
        for v in x:
            m |= self.missing_mask(v)
        return m

    def uncolored(self) -> list[int]:
        return [eid for eid, c in enumerate(self.color) if c == UNCOLORED]

    def colored_edges(self) -> Iterator[tuple[int, int]]:
        for eid, c in enumerate(self.color):
            if c != UNCOLORED:
                yield eid, c

    def colors_used(self) -> set[int]:
        return {c for c in self.color if c != UNCOLORED}

    def audit(self) -> None:
        """Recompute the caches from ``color`` and compare. Raises on mismatch."""
        at: list[dict[int, int]] = [dict() for _ in range(self.g.vertex_count)]
        for eid, col in enumerate(self.color):
            if col == UNCOLORED:
                continue
            if not 1 <= col <= self.k:
                raise ImproperColoring(f"edge {eid} color {col} outside palette")
            for w in self.g.ends[eid]:
                if col in at[w]:
                    raise ImproperColoring(
                        f"edges {at[w][col]} and {eid} share color {col} at vertex {w}"
                    )
                at[w][col] = eid
        for v in range(self.g.vertex_count):
            mask = 0
            for col in at[v]:
                mask |= 1 << col
            if at[v] != self._at[v] or mask != self._present[v]:
                raise AssertionError(f"missing-color cache out of date at vertex {v}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PartialColoring):
            return NotImplemented
        return self.g is other.g and self.k == other.k and self.color == other.color

    def __repr__(self) -> str:
        return f"PartialColoring(k={self.k}, colored={sum(1 for c in self.color if c)}/{len(self.color)})"


# set predicates


def is_elementary(c: PartialColoring, x: Iterable[int]) -> tuple[int, int, int] | None:
    """None if the missing sets of ``x`` are pairwise disjoint.

    Otherwise the lexicographically smallest ``(u, v, alpha)`` with ``u < v``
    both missing ``alpha``.
    """
    xs = sorted(set(x))
    best = None
    seen = 0
    for v in xs:
        if c.missing_mask(v) & seen:
            break
        seen |= c.missing_mask(v)
    else:
        return None
    for i, u in enumerate(xs):
        mu = c.missing_mask(u)
        if not mu:
            continue
        for v in xs[i + 1 :]:
            common = mu & c.missing_mask(v)
            if common:
                cand = (u, v, lowest_color(common))
                if best is None or cand < best:
                    best = cand
                break
        if best is not None and best[0] == u:
            return best
    return best


@dataclass(frozen=True)
class Open:
    defective: frozenset[int]


@dataclass(frozen=True)
class Closed:
    pass


@dataclass(frozen=True)
class StronglyClosed:
    pass


ClosureStatus = Union[Open, Closed, StronglyClosed]


def boundary_color_counts(c: PartialColoring, x: Iterable[int]) -> dict[int, list[int]]:
    """Map color -> boundary edges of ``x`` with that color (uncolored skipped)."""
    xs = set(x)
    out: dict[int, list[int]] = {}
    g = c.g
    for v in xs:
        for eid in g.incidence[v]:
            if g.other_end(eid, v) in xs:
                continue
            col = c.color[eid]
            if col != UNCOLORED:
                out.setdefault(col, []).append(eid)
    for lst in out.values():
        lst.sort()
    return out


def is_closed(c: PartialColoring, x: Iterable[int]) -> bool:
    xs = set(x)
    miss = c.missing_of_set(xs)
    return not any((miss >> col) & 1 for col in boundary_color_counts(c, xs))


def closure_status(c: PartialColoring, x: Iterable[int]) -> ClosureStatus:
    """Open(leaking and defective colors), Closed, or StronglyClosed."""
    xs = set(x)
    by_color = boundary_color_counts(c, xs)
    miss = c.missing_of_set(xs)
    leaking = {col for col in by_color if (miss >> col) & 1}
    defective = {col for col, lst in by_color.items() if len(lst) >= 2}
    if leaking:
        return Open(frozenset(leaking | defective))
    if defective:
        return Closed()
    return StronglyClosed()


def class_is_matching(c: PartialColoring) -> bool:
    seen: set[tuple[int, int]] = set()
    for eid, col in c.colored_edges():
        for w in c.g.ends[eid]:
            if (w, col) in seen:
                return False
            seen.add((w, col))
    return True


# file format


def parse_coloring(source: str | bytes | TextIO, g: Multigraph) -> PartialColoring:
    """Read ``s <k>`` then ``x <edge_id> <color>`` lines. Propriety is not checked."""
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    k = None
    assignment: dict[int, int] = {}
    for lineno, raw in enumerate(source.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "s":
            if k is not None or len(parts) != 2:
                raise ParseError(lineno, "malformed or duplicate 's <k>' header")
            try:
                k = int(parts[1])
            except ValueError:
                raise ParseError(lineno, "palette size is not an integer") from None
            if k < 0:
                raise ParseError(lineno, "negative palette size")
        elif parts[0] == "x":
            if k is None:
                raise ParseError(lineno, "assignment before 's <k>' header")
            if len(parts) != 3:
                raise ParseError(lineno, "malformed line, expected 'x <edge_id> <color>'")
            try:
                eid, col = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(lineno, "non-integer edge id or color") from None
            if not 0 <= eid < g.edge_count:
                raise ParseError(lineno, f"edge id {eid} out of range")
            if eid in assignment:
                raise ParseError(lineno, f"edge {eid} assigned twice")
            assignment[eid] = col
        else:
            raise ParseError(lineno, f"unknown line type {parts[0]!r}")
    if k is None:
        raise ParseError(1, "missing 's <k>' header")
    c = PartialColoring(g, k)
    c.color = [assignment.get(eid, UNCOLORED) for eid in range(g.edge_count)]
    # caches are rebuilt leniently so verify() can report the first conflict
    for eid, col in enumerate(c.color):
        if col == UNCOLORED or not 1 <= col <= k:
            continue
        for w in g.ends[eid]:
            c._at[w].setdefault(col, eid)
            c._present[w] |= 1 << col
    return c


def serialize_coloring(c: PartialColoring) -> str:
    lines = [f"s {c.k}"]
    lines.extend(f"x {eid} {col}" for eid, col in c.colored_edges())
    return "\n".join(lines) + "\n"

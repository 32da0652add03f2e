"""Loopless multigraphs with dense integer ids, plus the DIMACS-like file format.

Vertices are ``0..n-1`` and edges ``0..m-1`` in input order. Parallel edges
are separate ids with the same endpoints. The file format is 1-based::

    c optional comment
    p edge <n> <m>
    e <u> <v>        (m times, u != v)
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, TextIO

from .errors import EmptySet, ParseError


@dataclass(frozen=True)
class Multigraph:
    vertex_count: int
    ends: tuple[tuple[int, int], ...]
    incidence: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be nonnegative")
        inc: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for eid, (u, v) in enumerate(self.ends):
            if u == v:
                raise ValueError(f"edge {eid} is a self-loop at {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge {eid} has an endpoint out of range")
            inc[u].append(eid)
            inc[v].append(eid)
        object.__setattr__(self, "incidence", tuple(tuple(x) for x in inc))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Multigraph:
        return cls(n, tuple((int(u), int(v)) for u, v in edges))

    @property
    def edge_count(self) -> int:
        return len(self.ends)

    def other_end(self, eid: int, v: int) -> int:
        a, b = self.ends[eid]
        return b if a == v else a

    def degree(self, v: int) -> int:
        return len(self.incidence[v])


def max_degree(g: Multigraph) -> int:
    """Largest number of edges at a vertex, parallel edges counted separately."""
    return max((len(x) for x in g.incidence), default=0)


def multiplicity(g: Multigraph) -> int:
    """Largest number of parallel edges between one pair of vertices."""
    counts = Counter(tuple(sorted(e)) for e in g.ends)
    return max(counts.values(), default=0)


def _as_set(g: Multigraph, x: Iterable[int]) -> frozenset[int]:
    xs = frozenset(x)
    if not xs:
        raise EmptySet("vertex set is empty")
    for v in xs:
        if not 0 <= v < g.vertex_count:
            raise ValueError(f"vertex {v} out of range")
    return xs


def boundary_edges(g: Multigraph, x: Iterable[int]) -> list[int]:
    """Edges with exactly one end in ``x``, ascending by id."""
    xs = _as_set(g, x)
    out = set()
    for v in xs:
        for eid in g.incidence[v]:
            if g.other_end(eid, v) not in xs:
                out.add(eid)
    return sorted(out)


def inner_edges(g: Multigraph, x: Iterable[int]) -> list[int]:
    """Edges with both ends in ``x``, ascending by id."""
    xs = frozenset(x)
    return [eid for eid, (u, v) in enumerate(g.ends) if u in xs and v in xs]


def induced_subgraph(g: Multigraph, x: Iterable[int]) -> tuple[Multigraph, dict[int, int]]:
    """G[x] with vertices renumbered densely in ascending id order.

    Returns the subgraph and the old-to-new vertex mapping.
    """
    xs = sorted(_as_set(g, x))
    mapping = {v: i for i, v in enumerate(xs)}
    sub = [(mapping[u], mapping[v]) for u, v in g.ends if u in mapping and v in mapping]
    return Multigraph.from_edges(len(xs), sub), mapping


def _tokens(line: str) -> list[str]:
    return line.split()


def parse_graph(source: str | bytes | TextIO) -> Multigraph:
    """Parse the DIMACS-like edge format. Raises ParseError with a line number."""
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    n = m = None
    header_line = 0
    edges: list[tuple[int, int]] = []
    lineno = 0
    for lineno, raw in enumerate(source.splitlines(), start=1):
        parts = _tokens(raw)
        if not parts or parts[0] == "c":
            continue
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise ParseError(lineno, "duplicate header")
            if len(parts) != 4 or parts[1] != "edge":
                raise ParseError(lineno, "malformed header, expected 'p edge <n> <m>'")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(lineno, "malformed header counts") from None
            if n < 1 or m < 0:
                raise ParseError(lineno, "header counts out of range")
            header_line = lineno
        elif tag == "e":
            if n is None:
                raise ParseError(lineno, "edge line before header")
            if len(parts) != 3:
                raise ParseError(lineno, "malformed edge line, expected 'e <u> <v>'")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(lineno, "malformed vertex id") from None
            for w in (u, v):
                if not 1 <= w <= n:
                    raise ParseError(lineno, f"vertex id {w} out of range 1..{n}")
            if u == v:
                raise ParseError(lineno, f"self-loop at vertex {u}")
            edges.append((u - 1, v - 1))
        else:
            raise ParseError(lineno, f"unknown line type {tag!r}")
    if n is None:
        raise ParseError(max(lineno, 1), "missing 'p edge' header")
    if len(edges) != m:
        raise ParseError(header_line, f"header declares {m} edges, found {len(edges)}")
    return Multigraph.from_edges(n, edges)


def serialize_graph(g: Multigraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"c {c}" for c in comment.splitlines())
    lines.append(f"p edge {g.vertex_count} {g.edge_count}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.ends)
    return "\n".join(lines) + "\n"

"""Two-colored chains: extraction, Kempe changes, exit paths and ears.

A chain is read eagerly into explicit vertex and edge lists and stamped with
the coloring version. Swapping a chain after the coloring changed raises
StaleChain.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .coloring import PartialColoring
from .errors import BoundaryColorPresent, StaleChain

PATH = "path"
CYCLE = "cycle"


@dataclass(frozen=True)
class Chain:
    colors: tuple[int, int]
    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    edge_colors: tuple[int, ...]
    kind: str
    version: int

    @property
    def ends(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    def key(self) -> tuple:
        """Identity of the chain independent of the vertex it was read from."""
        if self.edges:
            return (self.colors, min(self.edges))
        return (self.colors, "v", self.vertices[0])

    def __contains__(self, v: int) -> bool:
        return v in self.vertices


def _walk(c: PartialColoring, start: int, first: int, second: int) -> tuple[list[int], list[int]]:
    """Follow first, second, first, ... from ``start`` until stuck or back at start."""
    verts = [start]
    edges: list[int] = []
    v = start
    col, nxt = first, second
    while True:
        eid = c.edge_at(v, col)
        if eid is None:
            break
        v = c.g.other_end(eid, v)
        edges.append(eid)
        verts.append(v)
        if v == start:
            break
        col, nxt = nxt, col
    return verts, edges


def chain_at(c: PartialColoring, v: int, a: int, b: int) -> Chain:
    """The maximal (a, b)-chain through ``v``, i.e. P_v(a, b).

    Paths are listed from one end to the other, with ``v`` first when it is
    an end. Cycles start and end at ``v``. A vertex missing both colors gives
    the single-vertex path.
    """
    if a == b:
        raise ValueError("chain colors must differ")
    verts, edges = _walk(c, v, a, b)
    kind = PATH
    if len(verts) > 1 and verts[-1] == v:
        kind = CYCLE
    else:
        back_v, back_e = _walk(c, v, b, a)
        if not edges:
            verts, edges = back_v, back_e
        elif back_e:
            verts = list(reversed(back_v)) + verts[1:]
            edges = list(reversed(back_e)) + edges
    return Chain((a, b), tuple(verts), tuple(edges), tuple(c.color[x] for x in edges), kind, c.version)


def kempe_swap(c: PartialColoring, chain: Chain) -> PartialColoring:
    """Interchange the two chain colors on the chain's edges, in place."""
    a, b = chain.colors
    if chain.version != c.version:
        if any(c.color[x] != col for x, col in zip(chain.edges, chain.edge_colors)):
            raise StaleChain("chain edges were recolored since it was read")
        fresh = chain_at(c, chain.vertices[0], a, b)
        if set(fresh.edges) != set(chain.edges):
            raise StaleChain("chain changed since it was read")
    for eid in chain.edges:
        c._clear_raw(eid)
    for eid, old in zip(chain.edges, chain.edge_colors):
        c._set_raw(eid, b if old == a else a)
    c.version += 1
    if c.trace is not None and chain.edges:
        c.trace("K %d %d %s" % (a, b, " ".join(str(x) for x in chain.edges)))
    return c


def swap(c: PartialColoring, v: int, a: int, b: int) -> Chain:
    """Swap P_v(a, b) in place. Returns the chain as read before the swap."""
    ch = chain_at(c, v, a, b)
    kempe_swap(c, ch)
    return ch


def swap_outside(c: PartialColoring, t: Iterable[int], a: int, b: int) -> PartialColoring:
    """Interchange a and b on every edge with both ends outside ``t``, in place.

    Requires that neither color sits on a boundary edge of ``t``; then the
    (a, b)-chains outside ``t`` are exactly the chains avoiding ``t``, and the
    change is a sequence of Kempe swaps.
    """
    ts = set(t)
    g = c.g
    for v in ts:
        for col in (a, b):
            eid = c.edge_at(v, col)
            if eid is not None and g.other_end(eid, v) not in ts:
                raise BoundaryColorPresent(col)
    return _swap_chains_avoiding(c, ts, a, b)


def _swap_chains_avoiding(c: PartialColoring, ts: set[int], a: int, b: int) -> PartialColoring:
    done: set[int] = set()
    g = c.g
    targets = [eid for eid, col in enumerate(c.color) if col in (a, b)]
    chains = []
    for eid in targets:
        if eid in done:
            continue
        ch = chain_at(c, g.ends[eid][0], a, b)
        done.update(ch.edges)
        if not any(v in ts for v in ch.vertices):
            chains.append(ch)
    for ch in chains:
        kempe_swap(c, ch)
    return c


def swap_avoiding(c: PartialColoring, t: Iterable[int], a: int, b: int) -> PartialColoring:
    """Swap every (a, b)-chain that does not meet ``t``, with no boundary check."""
    return _swap_chains_avoiding(c, set(t), a, b)


@dataclass(frozen=True)
class ExitPath:
    chain: Chain
    vertices: tuple[int, ...]  # from the exit vertex to the outside end
    edges: tuple[int, ...]
    exit_vertex: int
    exit_edge: int
    outside_end: int


@dataclass(frozen=True)
class Ear:
    chain: Chain
    vertices: tuple[int, ...]  # from one root to the other
    edges: tuple[int, ...]
    roots: tuple[int, int]


@dataclass(frozen=True)
class ContainedChain:
    chain: Chain
    vertices: tuple[int, ...]
    edges: tuple[int, ...]


Piece = Union[ExitPath, Ear, ContainedChain]


@dataclass(frozen=True)
class ChainReport:
    pieces: tuple[Piece, ...]
    path_count: int  # distinct (a, b)-paths meeting t; interchangeable iff <= 1
    paths: tuple[Chain, ...]

    @property
    def exits(self) -> list[ExitPath]:
        return [p for p in self.pieces if isinstance(p, ExitPath)]

    @property
    def ears(self) -> list[Ear]:
        return [p for p in self.pieces if isinstance(p, Ear)]


def chains_meeting(c: PartialColoring, t: Iterable[int], a: int, b: int) -> list[Chain]:
    """Every (a, b)-chain with a vertex in ``t``, each once, ordered by first meeting."""
    seen: set[tuple] = set()
    out = []
    for v in t:
        ch = chain_at(c, v, a, b)
        k = ch.key()
        if k in seen:
            continue
        seen.add(k)
        out.append(ch)
    return out


def _pieces(ch: Chain, ts: set[int]) -> list[Piece]:
    verts = list(ch.vertices)
    edges = list(ch.edges)
    cyc = ch.kind == CYCLE
    if cyc:
        # rotate so the walk starts at a vertex of t
        verts = verts[:-1]
        i0 = next(i for i, v in enumerate(verts) if v in ts)
        verts = verts[i0:] + verts[:i0]
        edges = edges[i0:] + edges[:i0]
        verts = verts + [verts[0]]
    inside = [v in ts for v in verts]
    out: list[Piece] = []
    idx = [i for i, f in enumerate(inside) if f]
    # exit paths at the two ends of a path
    if not cyc:
        first, last = idx[0], idx[-1]
        if first > 0:
            seg_v = tuple(reversed(verts[: first + 1]))
            seg_e = tuple(reversed(edges[:first]))
            out.append(ExitPath(ch, seg_v, seg_e, seg_v[0], seg_e[0], seg_v[-1]))
        if last < len(verts) - 1:
            seg_v = tuple(verts[last:])
            seg_e = tuple(edges[last:])
            out.append(ExitPath(ch, seg_v, seg_e, seg_v[0], seg_e[0], seg_v[-1]))
    # between consecutive inside positions: inner edge or ear
    run_v: list[int] = []
    run_e: list[int] = []
    for i, j in zip(idx, idx[1:]):
        if j == i + 1:
            if not run_v:
                run_v = [verts[i]]
            run_v.append(verts[j])
            run_e.append(edges[i])
            continue
        if run_e:
            out.append(ContainedChain(ch, tuple(run_v), tuple(run_e)))
            run_v, run_e = [], []
        if verts[i] != verts[j]:
            out.append(Ear(ch, tuple(verts[i : j + 1]), tuple(edges[i:j]), (verts[i], verts[j])))
    if run_e:
        out.append(ContainedChain(ch, tuple(run_v), tuple(run_e)))
    return out


def classify_chains_through(c: PartialColoring, t: Iterable[int], a: int, b: int) -> ChainReport:
    """Split every (a, b)-chain meeting ``t`` into exit paths, ears and inner runs."""
    if a == b:
        raise ValueError("chain colors must differ")
    order = list(t)
    ts = set(order)
    pieces: list[Piece] = []
    paths = []
    for ch in chains_meeting(c, order, a, b):
        if ch.kind == PATH:
            paths.append(ch)
        pieces.extend(_pieces(ch, ts))
    return ChainReport(tuple(pieces), len(paths), tuple(paths))

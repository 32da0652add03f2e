"""Rung-by-rung construction of series of closed trees joined by connecting edges.

A series starts from the first end ``x_e`` of the uncolored edge. Rung 0
grows the closure of ``e``; every later rung leaves the previous closed tree
through a connecting edge chosen either by revisiting an ear of an earlier
rung (RE, always tried first) or through an ear of a defective color of the
current tree (IE).

All rungs share one TreeSequence. ``sizes[i]`` is the number of vertices of
the closed tree ``T_i`` and ``exts[i]`` is the edge that leaves it. Each rung
also records the level boundaries and reserved color pairs of the hierarchy
it was grown with, so a conflict found inside an old rung can still be
handled with that rung's bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coloring import (
    UNCOLORED,
    PartialColoring,
    StronglyClosed,
    boundary_color_counts,
    closure_status,
    is_closed,
    mask_to_colors,
)
from .errors import EngineInvariantViolation, NotClosed
from .kempe import Ear, _pieces, chain_at, classify_chains_through
from .tree import TreeSequence, closure, outside_end

IE = "IE"
RE = "RE"


@dataclass(frozen=True)
class Extension:
    """Connecting edge leaving ``T_i`` with its companion and connecting colors.

    The uncolored edge itself is the extension of rung 0 (kind None).
    """

    edge: int
    gamma: int | None
    delta: int | None
    kind: str | None


@dataclass
class SeriesState:
    tree: TreeSequence
    sizes: list[int]
    exts: list[Extension]
    levels: list[list[int]] = field(default_factory=list)
    gsets: list[list[dict[int, tuple[int, int]]]] = field(default_factory=list)
    reserved: tuple[int, int] = (0, 0)

    @property
    def n(self) -> int:
        return len(self.sizes) - 1

    @property
    def q(self) -> int:
        return len(self.levels[-1]) - 1

    @property
    def split(self) -> int:
        """Size of ``T_{n,q}``, the part below the growing level."""
        return self.levels[-1][-1]

    def rung_tree(self, i: int) -> TreeSequence:
        return self.tree.prefix(self.sizes[i])

    def copy(self) -> SeriesState:
        return SeriesState(
            self.tree.copy(),
            list(self.sizes),
            list(self.exts),
            [list(x) for x in self.levels],
            [[dict(d) for d in x] for x in self.gsets],
            self.reserved,
        )

    def with_top(self, top: TreeSequence) -> SeriesState:
        """Same ladder and hierarchy with the growing level replaced."""
        out = self.copy()
        out.tree = top
        return out

    def truncated(self, size: int) -> SeriesState:
        """The series whose tree is the first ``size`` vertices."""
        n = self.n
        while n > 0 and self.sizes[n] >= size:
            n -= 1
        lv = self.levels[n]
        q = len(lv) - 1
        while q > 0 and lv[q] >= size:
            q -= 1
        return SeriesState(
            self.tree.prefix(size),
            self.sizes[: n + 1],
            self.exts[: n + 1],
            [list(x) for x in self.levels[:n]] + [lv[: q + 1]],
            [[dict(d) for d in x] for x in self.gsets[:n]] + [[dict(d) for d in self.gsets[n][: q + 1]]],
            self.reserved,
        )


def connecting_colors(s: SeriesState, upto: int) -> list[int]:
    return [x.delta for x in s.exts[1 : upto + 1] if x.delta is not None]


def d_set(c: PartialColoring, s: SeriesState, i: int | None = None) -> frozenset[int]:
    """Connecting colors of rungs 1..i that are not missing in ``T_i``."""
    if i is None:
        i = s.n
    miss = s.tree.missing_mask(c, s.sizes[i])
    return frozenset(d for d in connecting_colors(s, i) if not (miss >> d) & 1)


def initial_index(s: SeriesState, i: int | None = None) -> int:
    """Largest index h < i with an IE extension; 0 when there is none.

    The default ``i`` assumes ``exts`` also holds the extension of the growing rung.
    """
    if i is None:
        i = s.n + 1
    for h in range(i - 1, 0, -1):
        if s.exts[h].kind == IE:
            return h
    return 0


def ears_of(c: PartialColoring, verts, a: int, b: int) -> list[Ear]:
    return classify_chains_through(c, verts, a, b).ears


def _re_edges_from_ear(ear: Ear, inside: set[int] | frozenset[int]) -> list[int]:
    """Boundary edges reached by walking the ear from a root while staying inside."""
    out = []
    vs, es = ear.vertices, ear.edges
    for order_v, order_e in ((vs, es), (vs[::-1], es[::-1])):
        for k in range(1, len(order_v)):
            if order_v[k] not in inside:
                out.append(order_e[k - 1])
                break
    return out


def re_options(c: PartialColoring, s: SeriesState, i: int) -> dict[int, list[int]]:
    """For each IE index h < i whose ears leave ``T_i``: the usable connecting edges."""
    inside = set(s.tree.vertices[: s.sizes[i]])
    out: dict[int, list[int]] = {}
    for h in range(i - 1, 0, -1):
        ext = s.exts[h]
        if ext.kind != IE:
            continue
        cands: set[int] = set()
        for ear in ears_of(c, s.tree.vertices[: s.sizes[h]], ext.gamma, ext.delta):
            if all(v in inside for v in ear.vertices):
                continue
            cands.update(_re_edges_from_ear(ear, inside))
        if cands:
            out[h] = sorted(cands)
    return out


def re_finished(c: PartialColoring, s: SeriesState, upto: int) -> bool:
    """True iff no IE rung below ``upto`` has an ear leaving ``T_upto``."""
    if upto <= 1:
        return True
    return not re_options(c, s, upto)


def edge_in_ear(c: PartialColoring, verts, eid: int, a: int, b: int) -> bool:
    ts = set(verts)
    u, v = c.g.ends[eid]
    inner = u if u in ts else v
    ch = chain_at(c, inner, a, b)
    if eid not in ch.edges:
        return False
    for piece in _pieces(ch, ts):
        if isinstance(piece, Ear) and eid in piece.edges:
            return True
    return False


def ie_options(c: PartialColoring, verts) -> list[tuple[int, int, int]]:
    """(gamma, delta, edge) triples for an initial extension, smallest first."""
    by_color = boundary_color_counts(c, verts)
    defective = sorted(col for col, lst in by_color.items() if len(lst) >= 2)
    miss = c.missing_of_set(verts)
    out = []
    for gam in mask_to_colors(miss):
        for dlt in defective:
            for ear in ears_of(c, verts, gam, dlt):
                for eid in ear.edges:
                    if eid in by_color[dlt]:
                        out.append((gam, dlt, eid))
    return sorted(set(out))


def find_extension(c: PartialColoring, s: SeriesState, i: int, rng=None) -> Extension | None:
    """The extension leaving the closed tree ``T_i``, RE first. None if neither applies."""
    re = re_options(c, s, i)
    if re:
        h = max(re)
        ext = s.exts[h]
        eid = rng.choice(re[h]) if rng is not None else re[h][0]
        return Extension(eid, ext.gamma, ext.delta, RE)
    verts = s.tree.vertices[: s.sizes[i]]
    opts = ie_options(c, verts)
    if not opts:
        return None
    gam, dlt, eid = rng.choice(opts) if rng is not None else opts[0]
    return Extension(eid, gam, dlt, IE)


def extension_valid(c: PartialColoring, s: SeriesState, i: int) -> str | None:
    """None when ``exts[i]`` is a legal choice for ``T_i`` under ``c``; else a reason."""
    ext = s.exts[i]
    if c.color[ext.edge] != ext.delta:
        return f"connecting edge of rung {i} changed color"
    verts = s.tree.vertices[: s.sizes[i]]
    re = re_options(c, s, i)
    if re:
        if ext.kind != RE:
            return f"rung {i} should be a revisiting extension"
        for h, cands in re.items():
            src = s.exts[h]
            if (src.gamma, src.delta) == (ext.gamma, ext.delta) and ext.edge in cands:
                return None
        return f"revisiting extension of rung {i} no longer follows an ear"
    if ext.kind != IE:
        return f"rung {i} has no ear left to revisit"
    by_color = boundary_color_counts(c, verts)
    if len(by_color.get(ext.delta, ())) < 2:
        return f"connecting color of rung {i} is not defective"
    if not (c.missing_of_set(verts) >> ext.gamma) & 1:
        return f"companion color of rung {i} is not missing"
    if not edge_in_ear(c, verts, ext.edge, ext.gamma, ext.delta):
        return f"connecting edge of rung {i} is not on an ear"
    return None


def start(c: PartialColoring, e: int) -> SeriesState:
    """Rung 0 before growth: ``T_0 = (x_e)`` with the uncolored edge as its extension."""
    if c.color[e] != UNCOLORED:
        raise ValueError("the start edge must be uncolored")
    x = min(c.g.ends[e])
    miss = mask_to_colors(c.missing_mask(x))
    if len(miss) < 2:
        raise EngineInvariantViolation("end of the uncolored edge misses fewer than two colors")
    return SeriesState(
        TreeSequence.rooted(x),
        [1],
        [Extension(e, None, None, None)],
        [[1]],
        [[{}]],
        (miss[0], miss[1]),
    )


# The plain series operation: closures without a hierarchy.


@dataclass(frozen=True)
class Extended:
    state: SeriesState
    extension: Extension


@dataclass(frozen=True)
class Finished:
    vertices: frozenset[int]


def initial_series(c: PartialColoring, e: int) -> SeriesState:
    """Closed rung-0 state: ``T_1`` is the plain closure of the uncolored edge."""
    s = start(c, e)
    t = s.tree.copy()
    t.append(e, c.g.other_end(e, t.vertices[0]))
    t = closure(c, t)
    return SeriesState(t, [1, len(t)], list(s.exts), [[1]], [[{}]], s.reserved)


def try_extend(c: PartialColoring, s: SeriesState) -> Extended | Finished:
    """One iteration of the series construction on a closed top tree.

    ``s`` describes closed trees ``T_0 .. T_N`` with ``s.tree`` equal to
    ``T_N``. Returns Finished when ``T_N`` is strongly closed, otherwise a state
    with one more rung whose tree is a plain closure of ``T_N`` plus the chosen
    connecting edge.
    """
    i = s.n
    top = s.tree.prefix(s.sizes[i])
    if not is_closed(c, top.vertices):
        raise NotClosed("top tree is not closed")
    if isinstance(closure_status(c, top.vertices), StronglyClosed):
        return Finished(top.vertex_set())
    ext = find_extension(c, s, i)
    if ext is None:
        raise EngineInvariantViolation(
            "closed tree that is not strongly closed has no extension",
            {"vertices": top.vertices, "rung": i},
        )
    grown = top.copy()
    grown.append(ext.edge, outside_end(c, grown, ext.edge))
    grown = closure(c, grown)
    if c.trace is not None:
        c.trace(f"R {ext.kind} {ext.edge} {ext.gamma} {ext.delta}")
    out = SeriesState(
        grown,
        s.sizes + [len(grown)],
        s.exts + [ext],
        [list(x) for x in s.levels] + [[s.sizes[i]]],
        [[dict(d) for d in x] for x in s.gsets] + [[{}]],
        s.reserved,
    )
    return Extended(out, ext)

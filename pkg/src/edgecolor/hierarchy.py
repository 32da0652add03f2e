"""Leveled growth of a rung with reserved color pairs.

A rung leaving the closed tree ``T_n`` is grown in levels
``T_n = T_{n,0} ⊂ T_{n,1} ⊂ ... ⊂ T_{n,q} ⊂ T``. Every connecting color
``δ_m`` that is not yet missing in the tree owns a reserved pair of colors
(its Γ-set). Inside a level, growth only uses missing colors outside the
pairs of still-pending connecting colors. When growth stalls before the tree
is closed, a boundary edge colored from some pair opens the next level and
that pair is re-drawn from the colors missing on the level just finished.

In a SeriesState, ``levels[n]`` holds the sizes ``|T_{n,0}|, ..., |T_{n,q}|``
and ``gsets[n][j]`` maps each ``δ_m`` of ``D_{n,j}`` to its pair at level j.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .coloring import PartialColoring, is_closed, mask_to_colors
from .errors import EngineInvariantViolation, NotClosed
from .series import SeriesState, d_set
from .tree import TreeSequence, outside_end, augment_candidates

OK = "OK"


@dataclass
class HierarchyState:
    """The leveled top rung of a series.

    ``levels[j]`` is ``|T_{n,j}|`` for ``j = 0..q``; ``tree`` is ``T_{n,q+1}``.
    ``gamma_sets[j]`` maps each connecting color of ``D_{n,j}`` to its pair.
    """

    tree: TreeSequence
    levels: list[int]
    gamma_sets: list[dict[int, tuple[int, int]]]
    reserved: tuple[int, int]
    gamma_n: int | None
    d_colors: frozenset[int]
    closed: bool = False
    conflict: int | None = None

    @property
    def q(self) -> int:
        return len(self.levels) - 1

    def level_tree(self, j: int) -> TreeSequence:
        if j > self.q:
            return self.tree
        return self.tree.prefix(self.levels[j])


def view(c: PartialColoring, s: SeriesState) -> HierarchyState:
    """The hierarchy of the growing rung of a series state."""
    n = s.n
    gam = s.exts[n].gamma if n >= 1 else None
    return HierarchyState(
        s.tree,
        list(s.levels[n]),
        [dict(d) for d in s.gsets[n]],
        s.reserved,
        gam,
        d_set(c, s, n),
    )


def pair_mask(gs: dict[int, tuple[int, int]], keys) -> int:
    m = 0
    for d in keys:
        a, b = gs[d]
        m |= (1 << a) | (1 << b)
    return m


def allocate_gamma0(c: PartialColoring, s: SeriesState, n: int) -> dict[int, tuple[int, int]]:
    """Level-0 pairs for rung ``n``: two smallest unused colors of φ̄(T_n) per connecting color.

    The companion color of rung ``n`` and the two reserved colors are never used.
    """
    dn = sorted(d_set(c, s, n))
    if not dn:
        return {}
    avoid = set(s.reserved)
    if n >= 1 and s.exts[n].gamma is not None:
        avoid.add(s.exts[n].gamma)
    pool = [x for x in mask_to_colors(s.tree.missing_mask(c, s.sizes[n])) if x not in avoid]
    if len(pool) < 2 * len(dn):
        raise EngineInvariantViolation(
            "too few missing colors to reserve pairs",
            {"rung": n, "pool": pool, "connecting": dn},
        )
    return {d: (pool[2 * i], pool[2 * i + 1]) for i, d in enumerate(dn)}


def _format_sets(gs: dict[int, tuple[int, int]]) -> str:
    return " ".join(f"{d}:{a},{b}" for d, (a, b) in sorted(gs.items()))


def grow(
    c: PartialColoring,
    s: SeriesState,
    rng: random.Random | None = None,
) -> int | None:
    """Grow the rung of ``s`` in place until its tree is closed or not elementary.

    ``s.tree`` must end at ``T_n`` plus possibly some already grown vertices,
    all elementary. The connecting edge ``exts[n]`` is appended first when
    the tree is still ``T_n``. Returns None when the tree became closed,
    otherwise the position of the first vertex that repeats a missing color.
    """
    n = s.n
    t = s.tree
    g = c.g
    seen = t.missing_mask(c)
    dn = d_set(c, s, n)
    trace = c.trace

    def push(eid: int) -> int | None:
        nonlocal seen
        v = outside_end(c, t, eid)
        t.append(eid, v)
        if trace is not None:
            trace(f"T+ {eid} {v}")
        m = c.missing_mask(v)
        if m & seen:
            return len(t) - 1
        seen |= m
        return None

    if len(t) == s.sizes[n]:
        hit = push(s.exts[n].edge)
        if hit is not None:
            return hit
    while True:
        gs = s.gsets[n][-1]
        pending = [d for d in dn if not (seen >> d) & 1]
        held = pair_mask(gs, pending)
        cands = augment_candidates(c, t, c.full_mask & ~held)
        if cands:
            eid = rng.choice(cands) if rng is not None else cands[0]
            hit = push(eid)
            if hit is not None:
                return hit
            continue
        if not held or is_closed(c, t.vertices):
            return None
        # stalled: open a level through the smallest boundary edge colored from a held pair
        members = t.pos.keys()
        best = None
        for v in t.vertices:
            for eid in g.incidence[v]:
                col = c.color[eid]
                if col and (held >> col) & 1 and (seen >> col) & 1 and g.other_end(eid, v) not in members:
                    if best is None or eid < best:
                        best = eid
        if best is None:
            return None
        col = c.color[best]
        owner = next(d for d in sorted(pending) if col in gs[d])
        prev = s.levels[n][-1]
        fresh = 0
        for v in t.vertices[prev:]:
            fresh |= c.missing_mask(v)
        avail = [x for x in mask_to_colors(fresh) if x not in s.reserved and x != (s.exts[n].gamma if n else None)]
        if len(avail) < 2:
            raise EngineInvariantViolation(
                "new level misses fewer than two colors",
                {"rung": n, "level_start": prev, "size": len(t)},
            )
        nxt = {d: gs[d] for d in pending}
        nxt[owner] = (avail[0], avail[1])
        s.levels[n].append(len(t))
        s.gsets[n].append(nxt)
        if trace is not None:
            trace(f"H {len(s.levels[n]) - 1} {_format_sets(nxt)}")
        hit = push(best)
        if hit is not None:
            return hit


def build_hierarchy(c: PartialColoring, s: SeriesState, rng: random.Random | None = None) -> HierarchyState:
    """Regrow the top rung of a closed series state with a leveled hierarchy.

    ``s`` is a state whose last rung leaves ``T_{N-1}`` through ``exts[N-1]``
    (as returned by ``try_extend``). The rung is rebuilt from ``T_{N-1}``.
    The result records a conflict position if the growth met a vertex that
    repeats a missing color; otherwise it is closed.
    """
    if s.n < 1:
        raise ValueError("the state has no rung to regrow")
    base = s.n - 1
    if not is_closed(c, s.tree.prefix(s.sizes[base]).vertices) and base >= 1:
        raise NotClosed("the tree below the top rung is not closed")
    work = SeriesState(
        s.tree.prefix(s.sizes[base]),
        s.sizes[: base + 1],
        s.exts[: base + 1],
        [list(x) for x in s.levels[:base]] + [[s.sizes[base]]],
        [[dict(d) for d in x] for x in s.gsets[:base]] + [[allocate_gamma0(c, s, base)]],
        s.reserved,
    )
    hit = grow(c, work, rng)
    h = view(c, work)
    h.closed = hit is None and is_closed(c, work.tree.vertices)
    h.conflict = hit
    return h


def first_missing(c: PartialColoring, t: TreeSequence, col: int, size: int | None = None) -> int:
    """Position of ``v(col)``: the first vertex missing ``col``, else the last one."""
    end = len(t) if size is None else size
    for i in range(end):
        if c.misses(t.vertices[i], col):
            return i
    return end - 1


def check_r2(c: PartialColoring, h: HierarchyState) -> str:
    """Evaluate the hierarchy clauses literally. Returns OK or the first failing clause.

    Clause ids: ``pre`` (pair membership and reserved colors), ``i``, ``ii``,
    ``iii``, ``iv``.
    """
    t = h.tree
    x_e = t.vertices[0]
    gm, tm = h.reserved
    if gm == tm or not c.misses(x_e, gm) or not c.misses(x_e, tm):
        return "pre"
    forbidden = {gm, tm}
    if h.gamma_n is not None:
        forbidden.add(h.gamma_n)
    q = h.q
    level_miss = []
    for j in range(q + 1):
        level_miss.append(t.missing_mask(c, h.levels[j]))
    for j in range(q + 1):
        gs = h.gamma_sets[j]
        want = {d for d in h.d_colors if not (level_miss[j] >> d) & 1}
        if set(gs) != want:
            return "ii"
        for d, pair in gs.items():
            if len(set(pair)) != 2:
                return "pre"
            for x in pair:
                if x in forbidden or not (level_miss[j] >> x) & 1:
                    return "pre"
    # (i): pair colors avoid the next level up to the vertex missing the owner
    for j in range(q + 1):
        start = h.levels[j]
        end = h.levels[j + 1] if j < q else len(t)
        for d, pair in h.gamma_sets[j].items():
            stop = first_missing(c, t, d, end)
            stop = max(stop, start - 1)
            for i in range(start, stop + 1):
                if c.color[t.edges[i]] in pair:
                    return "i"
    # (ii): pairs at one level are disjoint
    for gs in h.gamma_sets:
        used: set[int] = set()
        for pair in gs.values():
            if used & set(pair):
                return "ii"
            used.update(pair)
    # (iii): new pair colors come from the previous level's new vertices
    for j in range(1, q + 1):
        old = set()
        for pair in h.gamma_sets[j - 1].values():
            old.update(pair)
        fresh = 0
        for v in t.vertices[h.levels[j - 1] : h.levels[j]]:
            fresh |= c.missing_mask(v)
        for pair in h.gamma_sets[j].values():
            for x in pair:
                if x not in old and not (fresh >> x) & 1:
                    return "iii"
    # (iv): each level is closed outside the pairs of its pending colors
    g = c.g
    for j in range(1, q + 1):
        size = h.levels[j]
        pending = [d for d in h.d_colors if not (level_miss[j] >> d) & 1]
        prev = h.gamma_sets[j - 1]
        if any(d not in prev for d in pending):
            return "iv"
        allowed = level_miss[j] & ~pair_mask(prev, pending)
        members = set(t.vertices[:size])
        for v in t.vertices[:size]:
            for eid in g.incidence[v]:
                col = c.color[eid]
                if col and (allowed >> col) & 1 and g.other_end(eid, v) not in members:
                    return "iv"
    return OK


__all__ = [
    "OK",
    "HierarchyState",
    "allocate_gamma0",
    "build_hierarchy",
    "check_r2",
    "first_missing",
    "grow",
    "pair_mask",
    "view",
]

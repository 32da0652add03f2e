"""Recoloring engine for one uncolored edge.

``resolve`` grows a series of closed trees with leveled rungs from the
uncolored edge. Growth stops either at a strongly closed elementary tree,
which becomes a density certificate, or at the first vertex whose missing
set meets the missing set of an earlier vertex. In the second case the
engine applies Kempe changes that turn the conflict into a strictly smaller
one under the order

    (rungs n, levels q, path number p(T), tail |T - T_{n,q}|)

until the two ends of the uncolored edge miss a common color.

Every target produced by a rule is re-validated from scratch: the ladder,
the connecting edges, the leveled growth rules and the reserved pairs are
all re-checked under the new coloring. A target that fails validation makes
the engine rebuild the series from the current coloring. Such restarts are
counted and charged against the work budget.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .coloring import (
    UNCOLORED,
    PartialColoring,
    StronglyClosed,
    boundary_color_counts,
    class_is_matching,
    closure_status,
    is_closed,
    lowest_color,
    mask_to_colors,
)
from .errors import EngineInvariantViolation, InvalidCertificate
from .graph import inner_edges, max_degree
from .hierarchy import OK, allocate_gamma0, check_r2, grow, view
from .kempe import chain_at, classify_chains_through, kempe_swap
from .series import (
    SeriesState,
    d_set,
    extension_valid,
    find_extension,
    initial_index,
    re_finished,
    start,
)
from .tree import TreeSequence, closure

# result types


@dataclass(frozen=True)
class Colored:
    coloring: PartialColoring


@dataclass(frozen=True)
class Certificate:
    """A vertex set that is elementary and strongly closed with the edge uncolored."""

    vertices: frozenset[int]
    k: int


Resolution = Colored | Certificate


@dataclass
class Stats:
    swaps: int = 0
    rungs: int = 0
    builds: int = 0
    restarts: int = 0
    transformations: int = 0
    normalizations: int = 0
    validation_failures: int = 0
    measure_violations: int = 0
    extension_repairs: int = 0
    base_colorings: int = 0
    certificates: int = 0
    kicks: int = 0
    work: int = 0
    invariant_violations: list[str] = field(default_factory=list)
    failure_reasons: dict[str, int] = field(default_factory=dict)

    def merge(self, other: Stats) -> None:
        for name in (
            "swaps",
            "rungs",
            "builds",
            "restarts",
            "transformations",
            "normalizations",
            "validation_failures",
            "measure_violations",
            "extension_repairs",
            "base_colorings",
            "certificates",
            "kicks",
            "work",
        ):
            setattr(self, name, getattr(self, name) + getattr(other, name))
        self.invariant_violations.extend(other.invariant_violations)
        for k, v in other.failure_reasons.items():
            self.failure_reasons[k] = self.failure_reasons.get(k, 0) + v

    def as_dict(self) -> dict:
        return {
            "swaps": self.swaps,
            "rungs": self.rungs,
            "builds": self.builds,
            "restarts": self.restarts,
            "transformations": self.transformations,
            "normalizations": self.normalizations,
            "validation_failures": self.validation_failures,
            "measure_violations": self.measure_violations,
            "extension_repairs": self.extension_repairs,
            "base_colorings": self.base_colorings,
            "certificates": self.certificates,
            "kicks": self.kicks,
            "invariant_violations": len(self.invariant_violations),
        }

    def fail(self, reason: str) -> None:
        self.failure_reasons[reason] = self.failure_reasons.get(reason, 0) + 1


@dataclass
class EngineConfig:
    """Knobs for one resolve call.

    ``checks`` turns on the structural monitor (matching after every swap,
    parity and size of closed trees, hierarchy clauses, closure uniqueness,
    interchangeability on certified series). It is meant for tests.
    """

    budget_multiplier: float = 10.0
    checks: bool = False
    max_restarts: int = 2000
    inner_limit: int = 64


# measure and path number


def path_number(t: TreeSequence, split: int, g) -> int:
    """Smallest ``i`` such that ``y_i, e_{i+1}, ..., y_p`` is a path.

    ``split`` is the size of the prefix ``T_{n,q}``; ``y_0`` is its last
    vertex and ``y_i`` is ``t.vertices[split - 1 + i]``. ``g`` supplies the
    edge ends.
    """
    p = len(t) - split
    if p < 1:
        raise ValueError("the tree must extend past the split")
    i = p
    while i > 1 and t.vertices[split - 2 + i] in g.ends[t.edges[split - 1 + i]]:
        i -= 1
    return i


@dataclass(frozen=True, order=True)
class Measure:
    n: int
    q: int
    p: int
    tail: int

    def __str__(self) -> str:
        return f"{self.n} {self.q} {self.p} {self.tail}"


def measure(c: PartialColoring, s: SeriesState) -> Measure:
    split = s.split
    return Measure(s.n, s.q, path_number(s.tree, split, c.g), len(s.tree) - split)


# building the series


@dataclass(frozen=True)
class Conflict:
    state: SeriesState


@dataclass(frozen=True)
class Strong:
    state: SeriesState


@dataclass(frozen=True)
class Stuck:
    state: SeriesState
    reason: str


class Engine:
    """Per-call engine state: the working coloring, monitor and budget."""

    def __init__(self, c: PartialColoring, e: int, cfg: EngineConfig, stats: Stats) -> None:
        self.c = c
        self.e = e
        self.cfg = cfg
        self.stats = stats
        g = c.g
        d = max(max_degree(g), 1)
        self.budget = max(1, int(cfg.budget_multiplier * g.edge_count * g.vertex_count * d**5))
        self.rng: random.Random | None = None

    # monitor

    def violation(self, what: str) -> None:
        self.stats.invariant_violations.append(what)

    def spend(self, units: int = 1) -> None:
        self.stats.work += units
        self._spent += units
        if self._spent > self.budget:
            raise EngineInvariantViolation(
                "work budget exhausted",
                {"budget": self.budget, "stats": self.stats.as_dict()},
            )

    def swap(self, v: int, a: int, b: int) -> None:
        if a == b:
            return
        ch = chain_at(self.c, v, a, b)
        if not ch.edges:
            return
        kempe_swap(self.c, ch)
        self.stats.swaps += 1
        self.spend()
        if self.cfg.checks and not class_is_matching(self.c):
            self.violation("color class is not a matching after a swap")

    def _check_closed_rung(self, s: SeriesState, n: int) -> None:
        """Monitor checks on the rung of ``s`` that just closed (``s.n == n``)."""
        c = self.c
        t = s.tree
        if len(t) % 2 == 0:
            self.violation(f"closed elementary tree of rung {n} has even size {len(t)}")
        if n == 0 and c.k >= max_degree(c.g) + 1:
            if bin(t.missing_mask(c)).count("1") < 5:
                self.violation("closed first tree misses fewer than five colors")
        r = check_r2(c, view(c, s))
        if r != OK:
            self.violation(f"hierarchy clause {r} fails after building rung {n}")
        # closure uniqueness: a plain closure in random order reaches the same set
        base = t.prefix(s.sizes[n] + 1)
        rnd = random.Random(len(t) * 7919 + n)
        other = closure(c, base, None, rnd)
        if other.vertex_set() != t.vertex_set():
            self.violation(f"closure of rung {n} depends on the append order")

    def _check_interchangeable(self, s: SeriesState) -> None:
        """Interchangeability on every closed tree of a certified series."""
        c = self.c
        for i in range(1, s.n + 1):
            verts = s.tree.vertices[: s.sizes[i]]
            skip = None
            if not re_finished(c, s, i):
                h = initial_index(s, i)
                if h:
                    skip = s.exts[h].gamma
            miss = mask_to_colors(c.missing_of_set(verts))
            for a in miss:
                if a == skip:
                    continue
                for b in range(1, c.k + 1):
                    if b == a:
                        continue
                    if classify_chains_through(c, verts, a, b).path_count > 1:
                        self.violation(f"colors {a},{b} are not interchangeable for closed tree {i}")

    def build(self) -> Conflict | Strong | Stuck:
        c = self.c
        self.stats.builds += 1
        s = start(c, self.e)
        while True:
            n = s.n
            hit = grow(c, s, self.rng)
            self.spend(len(s.tree))
            if hit is not None:
                return Conflict(s)
            self.stats.rungs += 1
            if self.cfg.checks:
                self._check_closed_rung(s, n)
            s.sizes.append(len(s.tree))
            if isinstance(closure_status(c, s.tree.vertices), StronglyClosed):
                return Strong(s)
            ext = find_extension(c, s, n + 1, self.rng)
            if ext is None:
                return Stuck(s, "closed tree has no extension")
            s.exts.append(ext)
            if c.trace is not None:
                c.trace(f"R {ext.kind} {ext.edge} {ext.gamma} {ext.delta}")
            s.levels.append([len(s.tree)])
            s.gsets.append([allocate_gamma0(c, s, n + 1)])

    def kick(self) -> None:
        """Swap a random two-colored chain through a random colored edge."""
        c = self.c
        rng = self.rng or random.Random(0)
        colored = [eid for eid, col in c.colored_edges()]
        if not colored or c.k < 2:
            return
        f = rng.choice(colored)
        a = c.color[f]
        b = rng.choice([x for x in range(1, c.k + 1) if x != a])
        self.swap(c.g.ends[f][0], a, b)
        self.stats.kicks += 1

    def repair_extension(self, s: SeriesState) -> None:
        """A closed, not strongly closed tree without an extension.

        Some defective color then meets the tree in two or more two-colored
        paths. Swapping a path that avoids the vertex missing the companion
        color changes the boundary; the series is then rebuilt.
        """
        c = self.c
        verts = s.tree.vertices
        by_color = boundary_color_counts(c, verts)
        defective = sorted(col for col, lst in by_color.items() if len(lst) >= 2)
        for gam in mask_to_colors(c.missing_of_set(verts)):
            holder = next(v for v in verts if c.misses(v, gam))
            for dlt in defective:
                rep = classify_chains_through(c, verts, gam, dlt)
                if rep.path_count < 2:
                    continue
                for ch in rep.paths:
                    if holder not in ch.vertices:
                        self.swap(ch.vertices[0], gam, dlt)
                        self.stats.extension_repairs += 1
                        return
        self.stats.fail("no repair for missing extension")

    # validation

    def locate(self, s: SeriesState) -> Conflict | str:
        """Validate ``s`` under the current coloring and find its first conflict.

        Returns Conflict with the truncated state, or a string explaining why
        the state is not a valid counterexample ("elementary" when it is valid
        but has no conflict).
        """
        c = self.c
        g = c.g
        t = s.tree
        self.spend(len(t))
        e = s.exts[0].edge
        x_e = t.vertices[0]
        if c.color[e] != UNCOLORED or x_e not in g.ends[e]:
            return "uncolored edge changed"
        gm, tm = s.reserved
        if gm == tm or not c.misses(x_e, gm) or not c.misses(x_e, tm):
            # re-draw the pair; the pair checks below decide if that is consistent
            miss = mask_to_colors(c.missing_mask(x_e))
            if len(miss) < 2:
                return "first vertex misses fewer than two colors"
            s = s.copy()
            s.reserved = gm, tm = miss[0], miss[1]
        seen = c.missing_mask(x_e)
        top = s.n
        for r in range(top + 1):
            base = s.sizes[r]
            if r >= 1:
                if not is_closed(c, t.vertices[:base]):
                    return f"tree {r} not closed"
                why = extension_valid(c, s, r)
                if why is not None:
                    return why
                if t.edges[base] != s.exts[r].edge:
                    return f"rung {r} does not start with its connecting edge"
            elif t.edges[1] != e:
                return "rung 0 does not start with the uncolored edge"
            end = s.sizes[r + 1] if r < top else len(t)
            levels = s.levels[r]
            gsl = s.gsets[r]
            dn = d_set(c, s, r) if r >= 1 else frozenset()
            forbidden = {gm, tm}
            if r >= 1 and s.exts[r].gamma is not None:
                forbidden.add(s.exts[r].gamma)
            level_at = {size: j for j, size in enumerate(levels)}
            cur: dict[int, tuple[int, int]] = {}
            pending: set[int] = set()
            level_start = base
            for pos in range(base, end):
                j = level_at.get(pos)
                if j is not None:
                    why = self._level_ok(s, r, j, pos, level_start, seen, dn, forbidden)
                    if why is not None:
                        return why
                    cur = gsl[j]
                    pending = set(cur)
                    level_start = pos
                eid = t.edges[pos]
                v = t.vertices[pos]
                if eid is None or v not in g.ends[eid]:
                    return f"position {pos} is not attached by its edge"
                w = g.other_end(eid, v)
                if t.pos.get(w, pos) >= pos:
                    return f"position {pos} attaches to a later vertex"
                col = c.color[eid]
                if pos != base:
                    if col == UNCOLORED or not (seen >> col) & 1:
                        return f"position {pos} is not an augmentation step"
                for d in pending:
                    if col in cur[d]:
                        return f"reserved color used early at position {pos}"
                m = c.missing_mask(v)
                if pending:
                    pending = {d for d in pending if not (m >> d) & 1}
                if m & seen:
                    return Conflict(s.truncated(pos + 1))
                seen |= m
        return "elementary"

    def _level_ok(self, s, r, j, pos, prev_start, seen, dn, forbidden) -> str | None:
        """Boundary checks when level ``j`` of rung ``r`` starts at ``pos``."""
        c = self.c
        g = c.g
        t = s.tree
        gs = s.gsets[r][j]
        want = {d for d in dn if not (seen >> d) & 1}
        if set(gs) != want:
            return f"reserved pairs of level {j} do not match the pending colors"
        used: set[int] = set()
        for pair in gs.values():
            for x in pair:
                if x in forbidden or not (seen >> x) & 1 or x in used:
                    return f"bad reserved pair at level {j}"
                used.add(x)
        if j == 0:
            return None
        prev = s.gsets[r][j - 1]
        old = set()
        for pair in prev.values():
            old.update(pair)
        fresh = 0
        for v in t.vertices[prev_start:pos]:
            fresh |= c.missing_mask(v)
        for x in used:
            if x not in old and not (fresh >> x) & 1:
                return f"new reserved color at level {j} is not from the previous level"
        if any(d not in prev for d in want):
            return f"level {j} lacks a pair"
        held = 0
        for d in want:
            a, b = prev[d]
            held |= (1 << a) | (1 << b)
        allowed = seen & ~held
        members = set(t.vertices[:pos])
        for v in t.vertices[:pos]:
            for eid in g.incidence[v]:
                col = c.color[eid]
                if col and (allowed >> col) & 1 and g.other_end(eid, v) not in members:
                    return f"level {j} is not closed outside its reserved pairs"
        return None

    # the rewrite rules

    def resolve(self) -> Resolution:
        c = self.c
        self._spent = 0
        u, v = c.g.ends[self.e]
        common = c.missing_mask(u) & c.missing_mask(v)
        if common:
            c.assign(self.e, lowest_color(common))
            self.stats.base_colorings += 1
            return Colored(c)
        visits: dict[tuple[int, ...], int] = {}
        restarts = 0
        while True:
            key = tuple(c.color)
            visits[key] = visits.get(key, 0) + 1
            if visits[key] > 1:
                # a rebuild came back to an earlier coloring: randomize the choices,
                # and after a few repeats also apply a random Kempe change
                self.rng = random.Random(restarts)
                if visits[key] > 2:
                    self.kick()
            res = self.build()
            if isinstance(res, Strong):
                if self.cfg.checks:
                    self._check_interchangeable(res.state)
                self.stats.certificates += 1
                return Certificate(res.state.tree.vertex_set(), c.k)
            if isinstance(res, Stuck):
                self.stats.fail(res.reason)
                self.repair_extension(res.state)
            else:
                out = self.descend(res.state)
                if out is not None:
                    return out
            restarts += 1
            self.stats.restarts += 1
            if restarts > self.cfg.max_restarts:
                raise EngineInvariantViolation(
                    "too many restarts",
                    {"stats": self.stats.as_dict(), "reasons": dict(self.stats.failure_reasons)},
                )

    def descend(self, s: SeriesState) -> Resolution | None:
        """Apply rules until the edge is colored (returns Colored) or a restart is needed."""
        c = self.c
        inner = 0
        while True:
            before = measure(c, s)
            try:
                kind, target = self.step(s, before)
            except _Restart as exc:
                self.stats.fail(str(exc))
                self.stats.validation_failures += 1
                return None
            if kind == "done":
                self.stats.base_colorings += 1
                return Colored(c)
            if kind == "restart":
                self.stats.fail(target)
                self.stats.validation_failures += 1
                return None
            cand = s.with_top(target) if target is not None else s.copy()
            loc = self.locate(cand)
            if not isinstance(loc, Conflict):
                self.stats.fail(f"{kind}: {loc}")
                self.stats.validation_failures += 1
                return None
            after = measure(c, loc.state)
            if after < before:
                self.stats.transformations += 1
                s = loc.state
                inner = 0
                continue
            if target is None and after == before:
                self.stats.normalizations += 1
                inner += 1
                if inner > self.cfg.inner_limit:
                    self.stats.fail("normalization loop")
                    return None
                s = loc.state
                continue
            self.stats.measure_violations += 1
            self.violation(f"rule {kind} did not decrease the measure: {before} -> {after}")
            return None

    def step(self, s: SeriesState, m: Measure):
        """One rule application. Returns (case id, target tree or None for "same tree")."""
        r = _Rules(self, s)
        kind, target = r.run()
        return kind, target


class _Restart(Exception):
    pass


class _Rules:
    """Case analysis for one conflict state ``T`` whose last vertex ``y_p`` conflicts."""

    def __init__(self, eng: Engine, s: SeriesState) -> None:
        self.eng = eng
        self.c = eng.c
        self.s = s
        self.t = t = s.tree
        self.n = s.n
        self.split = s.split
        self.q = s.q
        self.p = len(t) - self.split
        self.gs = s.gsets[self.n][-1]
        self.D = set(self.gs)
        self.gn = s.exts[self.n].gamma if self.n >= 1 else None
        self.gamma = next(x for x in s.reserved if x != self.gn)
        self.owner_of = {}
        for d, pair in self.gs.items():
            for x in pair:
                self.owner_of[x] = d
        self.yp = t.vertices[-1]

    # notation helpers

    def y(self, i: int) -> int:
        return self.t.vertices[self.split - 1 + i]

    def e(self, i: int) -> int:
        return self.t.edges[self.split - 1 + i]

    def size(self, i: int) -> int:
        """``|T(y_i)|``."""
        return self.split + i

    def miss_upto(self, i: int) -> int:
        return self.t.missing_mask(self.c, self.size(i))

    def used(self, upto: int) -> set[int]:
        """Colors on ``e_1 .. e_upto``."""
        return {self.c.color[self.e(i)] for i in range(1, upto + 1)}

    def index_of(self, pos: int) -> int:
        return pos - self.split + 1

    def miss(self, v: int) -> int:
        return self.c.missing_mask(v)

    def misses(self, v: int, col: int) -> bool:
        return self.c.misses(v, col)

    def shared(self) -> list[tuple[int, int]]:
        """(tree position, color) pairs with the color missing at ``y_p`` too."""
        my = self.miss(self.yp)
        out = []
        for pos in range(len(self.t) - 1):
            common = my & self.miss(self.t.vertices[pos])
            for col in mask_to_colors(common):
                out.append((pos, col))
        return out

    def owner(self, col: int) -> int | None:
        return self.owner_of.get(col)

    def pick_member(self, d: int, avoid: set[int]) -> int:
        a, b = self.gs[d]
        if a in avoid and b not in avoid:
            return b
        return a

    def sw(self, v: int, a: int, b: int) -> None:
        self.eng.swap(v, a, b)

    def b9n(self, k: int, used_upto: int, extra_avoid: set[int] = frozenset()) -> int:
        """Smallest β missing in ``T(y_k)`` that is free on ``e_1..e_used_upto``.

        β differs from the companion color, and either lies outside the
        reserved pairs and pending connecting colors, or belongs to a pair
        whose connecting color is already missing in ``T(y_k)``.
        """
        mk = self.miss_upto(k)
        used = self.used(used_upto)
        for b in mask_to_colors(mk):
            if b == self.gn or b in used or b in extra_avoid:
                continue
            own = self.owner(b)
            if b in self.D:
                continue
            if own is None or (mk >> own) & 1:
                return b
        raise _Restart("no free color for a detour")

    def tminus(self) -> TreeSequence:
        t = self.t
        out = t.prefix(self.size(self.p - 2))
        out.append(self.e(self.p), self.yp)
        return out

    def detour(self, a: int, b: int, limit: int) -> tuple[str, TreeSequence | None]:
        """Handle ``P = P_{y_p}(a, b)`` against the prefix ``T(y_limit)``.

        If P meets ``T(y_limit)``, return the tree made of ``T(y_{limit-1})``
        (or ``T(y_limit)`` when the first vertex met is ``y_limit``) plus the
        part of P back to ``y_p``. Otherwise swap P and return None.
        """
        c = self.c
        ch = chain_at(c, self.yp, a, b)
        verts = list(ch.vertices)
        edges = list(ch.edges)
        if verts[0] != self.yp:
            verts.reverse()
            edges.reverse()
        bound = self.size(limit)
        hit = None
        for idx, w in enumerate(verts):
            pw = self.t.pos.get(w)
            if pw is not None and pw < bound:
                hit = idx
                break
        if hit is None:
            kempe_swap(c, ch)
            self.eng.stats.swaps += 1
            self.eng.spend()
            return "swapped", None
        u = verts[hit]
        base = self.size(limit) if u == self.y(limit) else self.size(limit - 1)
        out = self.t.prefix(base)
        for idx in range(hit - 1, -1, -1):
            if verts[idx] in out.pos:
                raise _Restart("detour path revisits the tree")
            out.append(edges[idx], verts[idx])
        return "tree", out

    # dispatch

    def run(self) -> tuple[str, TreeSequence | None]:
        c = self.c
        p = self.p
        sh = self.shared()
        if not sh:
            raise _Restart("conflict vanished")
        if p == 1:
            y1 = self.y(1)
            alpha = next((col for _, col in sh if col != self.gn), sh[0][1])
            if self.n == 0:
                if c.color[self.eng.e] != UNCOLORED:
                    raise _Restart("uncolored edge changed")
                c.assign(self.eng.e, alpha)
                return "done", None
            if self.q == 0:
                self.sw(y1, alpha, self.gn)
                return "restart", "p1-q0"
            self.sw(y1, self.gamma, alpha)
            return "restart", "p1-q"
        if all(col == self.gn for _, col in sh):
            self._trace("ngamma")
            self.sw(self.yp, self.gn, self.gamma)
            return "ngamma", None
        sh = [(pos, col) for pos, col in sh if col != self.gn]
        j = path_number(self.t, self.split, c.g)
        if j == 1:
            self._trace("1")
            return self.case_one(sh)
        if j == p:
            self._trace("2")
            return self.case_two(sh)
        top = [self.index_of(pos) for pos, _ in sh]
        if max(top) >= j:
            self._trace("3a")
            return self.case_one(sh)
        self._trace("3b")
        return self.case_three(sh, j)

    def _trace(self, case: str) -> None:
        tr = self.c.trace
        if tr is not None:
            m = measure(self.c, self.s)
            tr(f"A {case} {m}")

    # p(T) = 1, or the shared vertex lies on the final path

    def case_one(self, sh):
        p = self.p
        yp = self.yp
        top = [(self.index_of(pos), col) for pos, col in sh if self.index_of(pos) >= 1]
        if not top:
            alpha = min(col for _, col in sh)
            used = [self.c.color[self.e(i)] for i in range(1, p + 1)]
            if alpha not in used:
                beta = lowest_color(self.miss(self.y(p - 1)))
                self.sw(yp, alpha, beta)
                return "claimi", None
            jj = used.index(alpha) + 1
            if jj >= 2:
                beta = lowest_color(self.miss(self.y(jj - 1)))
                self.sw(yp, alpha, beta)
                return "claimi", None
            self.sw(yp, alpha, self.gamma)
            return "claimi", None
        i = max(ix for ix, _ in top)
        cols = [col for ix, col in top if ix == i]
        non_d = [col for col in cols if col not in self.D]
        alpha = min(non_d) if non_d else min(cols)
        if i < p - 1:
            mb = self.miss(self.y(i + 1))
            opts = mask_to_colors(mb)
            non_d_b = [b for b in opts if b not in self.D]
            beta = non_d_b[0] if non_d_b else opts[0]
            if alpha not in self.D and beta not in self.D:
                self.sw(yp, alpha, beta)
                return "bp-1", None
            avoid = self.used(i + 1)
            if alpha in self.D:
                g1 = self.pick_member(alpha, avoid)
                self.sw(yp, g1, alpha)
                self.sw(yp, g1, beta)
                return "bp-1", None
            g1 = self.pick_member(beta, avoid)
            self.sw(yp, alpha, g1)
            self.sw(yp, beta, g1)
            return "bp-1", None
        # shrink: e_p joins y_{p-1} and y_p, both missing alpha
        ep = self.e(p)
        if self.y(p - 1) not in self.c.g.ends[ep]:
            raise _Restart("last edge does not join the last two vertices")
        theta = self.c.color[ep]
        self.sw(yp, alpha, theta)
        return "shrink", self.t.prefix(self.size(p - 1))

    # p(T) = p

    def case_two(self, sh):
        c = self.c
        p = self.p
        yp = self.yp
        yq = self.y(p - 1)
        ep = self.e(p)
        theta = c.color[ep]
        last = self.size(p - 1) - 1  # position of y_{p-1}
        at_prev = [col for pos, col in sh if pos == last]
        if at_prev:
            in_d = [col for col in at_prev if col in self.D]
            if in_d:
                return self.case_611(min(in_d), theta)
            return self.case_612(min(at_prev), theta)
        # alpha is shared with a vertex before y_{p-1}
        good = [col for _, col in sh if self.alpha_ok(col)]
        if not good:
            in_d = [col for _, col in sh if col in self.D]
            if in_d:
                d = min(in_d)
                g1 = self.pick_member(d, self.used(p))
                self.sw(yp, d, g1)
                return "2c-delta", None
            alpha = min(col for _, col in sh)
            beta = self.b9n(p - 2, p)
            kind, tree = self.detour(alpha, beta, p - 1) if not self._case_iii(alpha) else self._swap_only(alpha, beta)
            if tree is not None:
                return "balpha", tree
            return "balpha", None
        alpha = min(good)
        if not c.misses(yq, theta):
            own = self.owner(theta)
            if own is None or not c.misses(yq, own):
                return "2c-minus", self.tminus()
            self.sw(yp, alpha, theta)
            self.sw(yp, theta, own)
            return "2c-special", None
        if theta in self.D:
            g1 = self.pick_member(theta, self.used(p))
            self.sw(yp, alpha, g1)
            self.sw(yp, g1, theta)
            return "2c-theta-d", None
        self.sw(yp, alpha, theta)
        return "2c-theta", None

    def _case_iii(self, alpha: int) -> bool:
        return self.owner(alpha) is not None and alpha not in self.used(self.p)

    def _swap_only(self, a: int, b: int):
        self.sw(self.yp, a, b)
        return "swapped", None

    def alpha_ok(self, col: int) -> bool:
        """Condition on a shared color before the last two vertices."""
        if col == self.gn or col in self.used(self.p) or col in self.D:
            return False
        own = self.owner(col)
        if own is None:
            return True
        return bool((self.miss_upto(self.p - 2) >> own) & 1)

    def case_611(self, alpha: int, theta: int):
        c = self.c
        p = self.p
        yp = self.yp
        yq = self.y(p - 1)
        pair = self.gs[alpha]
        if not c.misses(yq, theta):
            own = self.owner(theta)
            if own is None or not c.misses(yq, own):
                g1 = pair[0]
                for g in pair:
                    ch = chain_at(c, yp, alpha, g)
                    if yq not in ch.vertices:
                        g1 = g
                        break
                self.sw(yp, alpha, g1)
                return "611a", self.tminus()
            gk1 = theta
            gk2 = self.gs[own][1] if self.gs[own][0] == theta else self.gs[own][0]
            self.sw(yp, alpha, gk2)
            beta = self.b9n(p - 2, p)
            self.sw(yp, gk2, beta)
            self.sw(yp, beta, gk1)
            return "611a", self.tminus()
        g1 = pair[0]
        self.sw(yp, alpha, g1)
        self.sw(yp, g1, theta)
        return "611b", None

    def case_612(self, alpha: int, theta: int):
        c = self.c
        p = self.p
        yp = self.yp
        yq = self.y(p - 1)
        if not c.misses(yq, theta):
            own = self.owner(theta)
            if own is not None and c.misses(yq, own):
                if c.misses(yp, own):
                    return self.case_611(own, theta)
                gm2 = self.gs[own][1] if self.gs[own][0] == theta else self.gs[own][0]
                self.sw(yp, alpha, gm2)
                self.sw(yp, gm2, own)
                return "612a-special", None
            mk = self.miss_upto(p - 2)
            used = self.used(p)
            beta = None
            for b in mask_to_colors(mk):
                if b in self.D or b == self.gn or b in used:
                    continue
                beta = b
                break
            if beta is None:
                raise _Restart("no free color in 612a")
            if c.misses(yp, beta):
                return "612a", self.tminus()
            vb = next(w for w in self.t.vertices if c.misses(w, beta))
            ch = chain_at(c, yp, alpha, beta)
            if vb not in ch.vertices:
                kempe_swap(c, ch)
                self.eng.stats.swaps += 1
                self.eng.spend()
                return "612a", self.tminus()
            self.sw(yq, alpha, beta)
            return "612a", self.t.prefix(self.size(p - 1))
        if theta in self.D:
            g1 = self.pick_member(theta, self.used(p))
            self.sw(yp, alpha, g1)
            self.sw(yp, g1, theta)
            return "612b", None
        beta = self.b9n(p - 2, p)
        self.sw(yp, alpha, beta)
        self.sw(yp, theta, beta)
        return "612b", None

    # 2 <= p(T) <= p - 1 with every shared vertex before y_{j-1}

    def case_three(self, sh, j: int):
        c = self.c
        yp = self.yp
        lim2 = self.size(j - 2)  # |T(y_{j-2})|
        mk2 = self.miss_upto(j - 2)

        def bj1_ok(pos, col):
            if pos >= lim2 or col == self.gn or col in self.D:
                return False
            own = self.owner(col)
            return own is None or bool((mk2 >> own) & 1)

        used_j = self.used(j)
        beta_ok = [col for pos, col in sh if bj1_ok(pos, col) and col not in used_j]
        if beta_ok:
            alpha = min(beta_ok)
            opts = mask_to_colors(self.miss(self.y(j)))
            non_d = [b for b in opts if b not in self.D]
            if non_d:
                self.sw(yp, alpha, non_d[0])
                return "3-final", None
            beta = opts[0]
            g1 = self.pick_member(beta, used_j)
            self.sw(yp, alpha, g1)
            self.sw(yp, g1, beta)
            return "3-final", None
        ok = [col for pos, col in sh if bj1_ok(pos, col)]
        if ok:
            alpha = min(ok)
            beta = self.b9n(j - 2, j)
            kind, tree = self.detour(alpha, beta, j - 1)
            return "beta", tree
        # bring alpha into shape
        at_prev = [col for pos, col in sh if pos == lim2]  # y_{j-1}
        if at_prev and j >= 2:
            alpha = min(at_prev)
            beta = self.b9n(j - 2, j - 1)
            if alpha in self.D:
                g1 = self.pick_member(alpha, self.used(j - 1))
                self.sw(yp, alpha, g1)
                self.sw(yp, g1, beta)
                return "bj-1", None
            self.sw(yp, alpha, beta)
            return "bj-1", None
        alpha = min(col for _, col in sh)
        if alpha in self.D:
            g1 = self.pick_member(alpha, self.used(self.p))
            self.sw(yp, alpha, g1)
            return "bj-1", None
        own = self.owner(alpha)
        if own is None:
            raise _Restart("unexpected shared color in case three")
        holder = None
        for pos in range(self.size(self.p - 1)):
            if c.misses(self.t.vertices[pos], own):
                holder = pos
                break
        if holder is None:
            beta = lowest_color(self.miss(self.y(self.p - 1)))
            self.sw(yp, alpha, beta)
            return "bj-1", None
        self.sw(yp, alpha, own)
        return "bj-1", None


# public entry points


def resolve(
    c: PartialColoring,
    e: int,
    k: int | None = None,
    *,
    config: EngineConfig | None = None,
    stats: Stats | None = None,
) -> Resolution:
    """Color ``e`` (returns Colored with a fresh coloring) or certify that ``k`` colors are too few.

    ``c`` must be proper with ``e`` uncolored and ``k >= Δ + 1``. Other
    uncolored edges are ignored. ``c`` itself is not modified.
    """
    cfg = config or EngineConfig()
    st = stats if stats is not None else Stats()
    work = c.copy() if k is None or k == c.k else c.widened(k)
    work.trace = c.trace
    if work.color[e] != UNCOLORED:
        raise ValueError(f"edge {e} is already colored")
    if work.k < max_degree(work.g) + 1:
        raise ValueError("the palette must have at least Δ + 1 colors")
    eng = Engine(work, e, cfg, st)
    out = eng.resolve()
    if isinstance(out, Certificate):
        try:
            certificate_count_check(work, out.vertices, work.k)
        except InvalidCertificate as exc:
            raise EngineInvariantViolation(f"certificate failed its count check: {exc}") from exc
    return out


def certificate_count_check(c: PartialColoring, cert, k: int) -> int:
    """Check the edge count of a certificate and return the density bound it proves.

    The set must have odd size ``s >= 3`` and at least ``k (s - 1) / 2 + 1``
    inner edges; the returned ``ceil(edges / ((s - 1) / 2))`` then exceeds ``k``.
    """
    verts = sorted(set(cert))
    g = c.g
    if any(not 0 <= v < g.vertex_count for v in verts):
        raise InvalidCertificate("vertex id out of range")
    size = len(verts)
    if size < 3 or size % 2 == 0:
        raise InvalidCertificate(f"certificate has {size} vertices; an odd number >= 3 is required")
    m = len(inner_edges(g, verts))
    half = (size - 1) // 2
    need = k * half + 1
    if m < need:
        raise InvalidCertificate(f"certificate spans {m} edges, fewer than {need}")
    bound = math.ceil(m / half)
    if bound <= k:
        raise InvalidCertificate(f"derived bound {bound} does not exceed {k}")
    return bound


__all__ = [
    "Certificate",
    "Colored",
    "EngineConfig",
    "Measure",
    "Resolution",
    "Stats",
    "certificate_count_check",
    "measure",
    "path_number",
    "resolve",
]

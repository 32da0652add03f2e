"""Top-level pipeline: small-degree shortcut, greedy pass, per-edge resolution, escalation."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .augmenter import Certificate, Colored, EngineConfig, Stats, certificate_count_check, resolve
from .coloring import UNCOLORED, PartialColoring, lowest_color
from .errors import Infeasible
from .graph import Multigraph, inner_edges, max_degree


@dataclass
class RunConfig:
    """How to run ``color_graph``.

    ``initial_k`` None means Δ+1; an integer fixes the starting palette and
    must be at least Δ. With ``escalate`` the palette grows by one whenever a
    certificate shows the current one is too small.
    """

    initial_k: int | None = None
    escalate: bool = True
    budget_multiplier: float = 10.0
    trace: bool = False
    shuffle: int | None = None
    checks: bool = False
    trace_sink: Callable[[str], None] | None = None


@dataclass(frozen=True)
class DensityCertificate:
    k_failed: int
    vertices: tuple[int, ...]
    edge_count: int
    bound: int

    def to_json(self) -> dict:
        return {
            "k_failed": self.k_failed,
            "vertices": [v + 1 for v in self.vertices],
            "edge_count": self.edge_count,
            "bound": self.bound,
        }


@dataclass
class RunResult:
    k_used: int
    coloring: PartialColoring
    certificates: list[tuple[int, DensityCertificate]]
    stats: dict
    trace: list[str] = field(default_factory=list)


def make_certificate(c: PartialColoring, verts, k: int) -> DensityCertificate:
    bound = certificate_count_check(c, verts, k)
    vs = tuple(sorted(verts))
    return DensityCertificate(k, vs, len(inner_edges(c.g, vs)), bound)


# maximum degree at most two


def _walks(g: Multigraph) -> list[tuple[list[int], list[int], bool]]:
    """Components of a graph with Δ <= 2 as (vertices, edges in order, is_cycle)."""
    seen_e = [False] * g.edge_count
    seen_v = [False] * g.vertex_count
    out = []
    starts = [v for v in range(g.vertex_count) if g.degree(v) == 1]
    starts += [v for v in range(g.vertex_count) if g.degree(v) == 2]
    for s in starts:
        if seen_v[s]:
            continue
        verts, edges = [s], []
        seen_v[s] = True
        v = s
        while True:
            nxt = next((e for e in g.incidence[v] if not seen_e[e]), None)
            if nxt is None:
                break
            seen_e[nxt] = True
            edges.append(nxt)
            v = g.other_end(nxt, v)
            if seen_v[v]:
                break
            seen_v[v] = True
            verts.append(v)
        out.append((verts, edges, g.degree(s) == 2))
    return out


def _color_low_degree(g: Multigraph, k: int, cfg: RunConfig) -> RunResult:
    walks = _walks(g)
    certs: list[tuple[int, DensityCertificate]] = []
    odd = next((w for w in walks if w[2] and len(w[1]) % 2 == 1), None)
    while odd is not None and k < 3:
        c0 = PartialColoring(g, k)
        cert = make_certificate(c0, odd[0], k)
        if not cfg.escalate:
            raise Infeasible(k, cert)
        certs.append((k, cert))
        k += 1
    c = PartialColoring(g, k)
    for verts, edges, is_cycle in walks:
        for i, eid in enumerate(edges):
            col = 1 + i % 2
            if is_cycle and len(edges) % 2 == 1 and i == len(edges) - 1:
                col = 3
            c.assign(eid, col)
    return RunResult(k, c, certs, _stats_dict(Stats(), g.edge_count, 0.0))


# general case


def color_graph(g: Multigraph, cfg: RunConfig | None = None) -> RunResult:
    """A proper coloring of every edge with at most max(Δ+1, Γ) colors."""
    cfg = cfg or RunConfig()
    t0 = time.perf_counter()
    delta = max_degree(g)
    if cfg.initial_k is None:
        k = delta + 1
    else:
        k = cfg.initial_k
        if k < delta:
            raise ValueError(f"palette {k} is smaller than the maximum degree {delta}")
    lines: list[str] = []
    sink = cfg.trace_sink
    if cfg.trace and sink is None:
        sink = lines.append

    if delta <= 2:
        res = _color_low_degree(g, k, cfg)
        res.stats["wall_time"] = time.perf_counter() - t0
        return res

    c = PartialColoring(g, k)
    c.trace = sink
    stats = Stats()
    ecfg = EngineConfig(budget_multiplier=cfg.budget_multiplier, checks=cfg.checks)
    certs: list[tuple[int, DensityCertificate]] = []
    order = list(range(g.edge_count))
    if cfg.shuffle is not None:
        random.Random(cfg.shuffle).shuffle(order)
    greedy = 0
    for eid in order:
        while True:
            u, v = g.ends[eid]
            free = c.missing_mask(u) & c.missing_mask(v)
            if free:
                c.assign(eid, lowest_color(free))
                greedy += 1
                break
            if c.k < delta + 1:
                # with exactly Δ colors there is no certificate to offer
                if not cfg.escalate:
                    raise Infeasible(c.k, None)
                c = _widen(c, delta + 1)
                continue
            out = resolve(c, eid, config=ecfg, stats=stats)
            if isinstance(out, Colored):
                c = out.coloring
                c.trace = sink
                break
            assert isinstance(out, Certificate)
            cert = make_certificate(c, out.vertices, c.k)
            if not cfg.escalate:
                raise Infeasible(c.k, cert)
            certs.append((c.k, cert))
            c = _widen(c, c.k + 1)
    problem = verify(g, c)
    if problem != OK:
        raise AssertionError(f"final coloring failed verification: {problem}")
    return RunResult(c.k, c, certs, _stats_dict(stats, greedy, time.perf_counter() - t0), lines)


def _stats_dict(stats: Stats, greedy: int, wall: float) -> dict:
    st = stats.as_dict()
    st["greedy"] = greedy
    st["work"] = stats.work
    st["wall_time"] = wall
    st["violations"] = list(stats.invariant_violations)
    st["failure_reasons"] = dict(stats.failure_reasons)
    return st


def _widen(c: PartialColoring, k: int) -> PartialColoring:
    out = c.widened(k)
    out.trace = c.trace
    return out


# verification

OK = "OK"


@dataclass(frozen=True)
class NotTotal:
    edge: int


@dataclass(frozen=True)
class OutOfRange:
    edge: int
    color: int


@dataclass(frozen=True)
class ColorConflict:
    edge1: int
    edge2: int
    vertex: int
    color: int


Violation = NotTotal | OutOfRange | ColorConflict


def verify(g: Multigraph, c: PartialColoring) -> str | Violation:
    """OK, or the first problem: an uncolored edge, a color outside 1..k, or a clash."""
    for eid in range(g.edge_count):
        if c.color[eid] == UNCOLORED:
            return NotTotal(eid)
    for eid in range(g.edge_count):
        col = c.color[eid]
        if not 1 <= col <= c.k:
            return OutOfRange(eid, col)
    for v in range(g.vertex_count):
        first: dict[int, int] = {}
        for eid in g.incidence[v]:
            col = c.color[eid]
            if col in first:
                return ColorConflict(first[col], eid, v, col)
            first[col] = eid
    return OK


__all__ = [
    "OK",
    "ColorConflict",
    "DensityCertificate",
    "NotTotal",
    "OutOfRange",
    "RunConfig",
    "RunResult",
    "color_graph",
    "make_certificate",
    "verify",
]

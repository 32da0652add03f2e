"""Exact oracles for small instances: density by subset enumeration, chromatic index by search.

The engine never calls these. They exist for tests, the ``density``
subcommand and the benchmark harness.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import TooLarge
from .graph import Multigraph, inner_edges, max_degree


@dataclass(frozen=True)
class DensityReport:
    gamma: int
    argmax_set: tuple[int, ...]


def subset_density(g: Multigraph, verts) -> int:
    """``ceil(|E(G[X])| / floor(|X| / 2))`` for a set of at least two vertices."""
    verts = set(verts)
    if len(verts) < 2:
        raise ValueError("density needs at least two vertices")
    m = len(inner_edges(g, verts))
    half = len(verts) // 2
    return -(-m // half)


def _edge_counts(g: Multigraph) -> np.ndarray:
    """``E[mask]`` = number of edges inside the vertex set ``mask``."""
    n = g.vertex_count
    adj = np.zeros((n, n), dtype=np.int64)
    for u, v in g.ends:
        adj[u, v] += 1
        adj[v, u] += 1
    counts = np.zeros(1 << n, dtype=np.int64)
    for b in range(n):
        rest = np.arange(1 << b, dtype=np.int64)
        into = np.zeros(1 << b, dtype=np.int64)
        for u in range(b):
            if adj[b, u]:
                into += adj[b, u] * ((rest >> u) & 1)
        counts[1 << b : 1 << (b + 1)] = counts[: 1 << b] + into
    return counts


def _lex_smallest(masks: np.ndarray, n: int) -> int:
    """The mask whose sorted vertex tuple is lexicographically smallest."""
    chosen = 0
    cand = masks
    while True:
        if np.any(cand == chosen):
            return chosen
        rest = cand & ~chosen
        low = rest & -rest
        best = low.min()
        cand = cand[low == best]
        chosen |= int(best)


def gamma_bruteforce(g: Multigraph, limit: int = 20) -> DensityReport:
    """Exact density over all vertex subsets of size at least two.

    Induced subgraphs suffice: for a fixed vertex set, keeping every edge
    only raises the ratio. Ties go to the set whose sorted tuple is smallest.
    A graph with fewer than two vertices has density 0 and an empty witness.
    """
    n = g.vertex_count
    if n > limit:
        raise TooLarge(f"{n} vertices exceeds the oracle limit {limit}")
    if n < 2:
        return DensityReport(0, ())
    counts = _edge_counts(g)
    masks = np.arange(1 << n, dtype=np.int64)
    pop = np.zeros(1 << n, dtype=np.int64)
    for b in range(n):
        pop += (masks >> b) & 1
    half = pop // 2
    ok = half >= 1
    ratio = np.full(1 << n, -1, dtype=np.int64)
    ratio[ok] = -(-counts[ok] // half[ok])
    gamma = int(ratio.max())
    best = _lex_smallest(masks[ratio == gamma], n)
    return DensityReport(gamma, tuple(v for v in range(n) if best >> v & 1))


def chromatic_index_oracle(g: Multigraph, limit: int = 24) -> int:
    """Smallest ``k`` with a proper ``k``-edge-coloring, by exhaustive search."""
    m = g.edge_count
    if m > limit:
        raise TooLarge(f"{m} edges exceeds the oracle limit {limit}")
    if m == 0:
        return 0
    k = max_degree(g)
    while not colorable(g, k):
        k += 1
    return k


def colorable(g: Multigraph, k: int) -> bool:
    """Whether ``g`` has a proper edge coloring with ``k`` colors.

    Branches on the uncolored edge with the fewest usable colors. Colors
    are interchangeable, so at most one never-used color is tried per branch.
    Prunes when a vertex has more uncolored edges than free colors, or when
    the uncolored edges exceed what ``k`` matchings can still hold.
    """
    n, m = g.vertex_count, g.edge_count
    if m == 0:
        return True
    if k < max_degree(g):
        return False
    full = (1 << k) - 1
    used_at = [0] * n
    left_at = [g.degree(v) for v in range(n)]
    color = [-1] * m
    class_size = [0] * k
    cap = n // 2

    def search(done: int, top: int) -> bool:
        if done == m:
            return True
        if m - done > sum(cap - s for s in class_size):
            return False
        best, best_free, best_cnt = -1, 0, k + 1
        for eid in range(m):
            if color[eid] >= 0:
                continue
            u, v = g.ends[eid]
            free = full & ~(used_at[u] | used_at[v])
            cnt = bin(free).count("1")
            if cnt < best_cnt:
                best, best_free, best_cnt = eid, free, cnt
                if cnt <= 1:
                    break
        if best_cnt == 0:
            return False
        u, v = g.ends[best]
        for col in range(min(top + 1, k)):
            if not best_free >> col & 1:
                continue
            bit = 1 << col
            used_at[u] |= bit
            used_at[v] |= bit
            left_at[u] -= 1
            left_at[v] -= 1
            color[best] = col
            class_size[col] += 1
            if all(k - bin(used_at[w]).count("1") >= left_at[w] for w in (u, v)):
                if search(done + 1, max(top, col + 1)):
                    return True
            class_size[col] -= 1
            color[best] = -1
            left_at[u] += 1
            left_at[v] += 1
            used_at[u] &= ~bit
            used_at[v] &= ~bit
        return False

    return search(0, 0)


__all__ = ["DensityReport", "chromatic_index_oracle", "colorable", "gamma_bruteforce", "subset_density"]

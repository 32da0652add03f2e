"""Small graph families used by tests, the benchmark corpus and examples."""

from __future__ import annotations

import random

from .graph import Multigraph


def fat_triangle(mu: int) -> Multigraph:
    """Three vertices, every pair joined by ``mu`` parallel edges."""
    if mu < 1:
        raise ValueError("multiplicity must be positive")
    return Multigraph.from_edges(3, [(u, v) for u, v in ((0, 1), (1, 2), (0, 2)) for _ in range(mu)])


def petersen() -> Multigraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Multigraph.from_edges(10, outer + spokes + inner)


def path(n: int) -> Multigraph:
    return Multigraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Multigraph:
    if n < 3:
        raise ValueError("a simple cycle needs at least 3 vertices")
    return Multigraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def random_multigraph(seed: int, n: int, max_mult: int, m: int) -> Multigraph:
    """``m`` edges on ``n`` vertices with every pair used at most ``max_mult`` times.

    Edges are drawn uniformly among pairs that still have room, so ``m`` is
    capped at ``max_mult * n (n - 1) / 2``.
    """
    rnd = random.Random(seed)
    room = {(u, v): max_mult for u in range(n) for v in range(u + 1, n)}
    edges = []
    for _ in range(m):
        open_pairs = [p for p, r in room.items() if r > 0]
        if not open_pairs:
            break
        p = rnd.choice(open_pairs)
        room[p] -= 1
        edges.append(p)
    return Multigraph.from_edges(n, edges)


def matching_union(seed: int, n: int, rounds: int, max_mult: int) -> Multigraph:
    """Union of ``rounds`` random perfect matchings, dropping pairs past ``max_mult``.

    Nearly regular of degree ``rounds``, so greedy coloring gets stuck often.
    """
    rnd = random.Random(seed)
    used: dict[tuple[int, int], int] = {}
    edges = []
    for _ in range(rounds):
        vs = list(range(n))
        rnd.shuffle(vs)
        for i in range(0, n - 1, 2):
            p = (min(vs[i], vs[i + 1]), max(vs[i], vs[i + 1]))
            if used.get(p, 0) < max_mult:
                used[p] = used.get(p, 0) + 1
                edges.append(p)
    return Multigraph.from_edges(n, edges)


def acceptance_corpus(count: int = 500, seed: int = 2024) -> list[tuple[str, Multigraph]]:
    """Seeded small multigraphs: n <= 10, multiplicity <= 4, m <= 24."""
    rnd = random.Random(seed)
    out = []
    for i in range(count):
        n = rnd.randint(2, 10)
        mult = rnd.randint(1, 4)
        m = rnd.randint(1, min(24, mult * n * (n - 1) // 2))
        out.append((f"rand{i:03d}", random_multigraph(rnd.randrange(1 << 30), n, mult, m)))
    return out


__all__ = ["acceptance_corpus", "cycle", "fat_triangle", "matching_union", "path", "petersen", "random_multigraph"]

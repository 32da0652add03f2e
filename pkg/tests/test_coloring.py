import pytest
from hypothesis import given
from hypothesis import strategies as st

from edgecolor.coloring import (
    Closed,
    Open,
    PartialColoring,
    StronglyClosed,
    class_is_matching,
    closure_status,
    is_elementary,
    parse_coloring,
    serialize_coloring,
)
from edgecolor.errors import ImproperColoring, ParseError
from edgecolor.generators import fat_triangle, petersen
from edgecolor.graph import Multigraph, max_degree
from edgecolor.kempe import chain_at, kempe_swap

from .strategies import multigraphs

# a proper 6-coloring of the fat triangle with multiplicity 2 (from the chromatic-index oracle)
FAT2_COLORS = [1, 2, 3, 4, 5, 6]
# a proper 4-coloring of the Petersen graph (frozen from a driver run, checked edgewise below)
PETERSEN_COLORS = [1, 2, 1, 2, 3, 2, 3, 3, 3, 1, 1, 1, 2, 4, 4]


def greedy(g, k, order=None):
    c = PartialColoring(g, k)
    for eid in order or range(g.edge_count):
        u, v = g.ends[eid]
        free = c.missing_mask(u) & c.missing_mask(v)
        if free:
            c.assign(eid, (free & -free).bit_length() - 1)
    return c


def test_frozen_petersen_coloring_is_proper():
    g = petersen()
    for i, (a, b) in enumerate(g.ends):
        for j in range(i):
            if {a, b} & set(g.ends[j]):
                assert PETERSEN_COLORS[i] != PETERSEN_COLORS[j]


def test_missing_examples():
    g = Multigraph.from_edges(4, [(0, 1), (1, 2)])
    c = PartialColoring(g, 3)
    assert c.missing(3) == {1, 2, 3}
    c.assign(0, 1)
    c.assign(1, 2)
    assert c.missing(1) == {3}
    c6 = PartialColoring.from_assignment(fat_triangle(2), 6, FAT2_COLORS)
    assert all(len(c6.missing(v)) == 2 for v in range(3))


def test_assign_rejects_clash():
    c = PartialColoring(fat_triangle(1), 3)
    c.assign(0, 1)
    with pytest.raises(ImproperColoring):
        c.assign(1, 1)


def test_elementary_examples():
    c = PartialColoring(Multigraph.from_edges(2, [(0, 1)]), 2)
    assert is_elementary(c, {0}) is None
    assert is_elementary(c, {0, 1}) == (0, 1, 1)
    p = PartialColoring.from_assignment(petersen(), 4, PETERSEN_COLORS)
    assert class_is_matching(p)
    assert is_elementary(p, range(10)) is not None


def test_closure_status_examples():
    single = PartialColoring(Multigraph.from_edges(2, [(0, 1)]), 2)
    assert isinstance(closure_status(single, {0, 1}), StronglyClosed)
    p = PartialColoring.from_assignment(petersen(), 4, PETERSEN_COLORS)
    assert isinstance(closure_status(p, range(10)), StronglyClosed)


def test_fat_triangle_pair_is_open_for_every_coloring():
    # every proper 5-coloring of the other five edges leaks a missing color of {a, b}
    import itertools

    g = fat_triangle(2)
    found = 0
    for cols in itertools.product(range(1, 6), repeat=5):
        try:
            c = PartialColoring.from_assignment(g, 5, (0,) + cols)
        except ImproperColoring:
            continue
        found += 1
        assert isinstance(closure_status(c, {0, 1}), Open)
    assert found > 0


def test_closed_but_not_strongly_closed():
    # three leaves of a star see the same boundary colors they miss
    g = Multigraph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    c = PartialColoring.from_assignment(g, 4, [1, 2, 3])
    assert closure_status(c, {1, 2, 3}) == Open(frozenset({1, 2, 3}))
    # three disjoint edges of color 1 leaving a set that misses only 2
    g2 = Multigraph.from_edges(6, [(0, 3), (1, 4), (2, 5)])
    c2 = PartialColoring.from_assignment(g2, 2, [1, 1, 1])
    assert isinstance(closure_status(c2, {0, 1, 2}), Closed)


def test_coloring_file_roundtrip_and_errors():
    g = fat_triangle(2)
    c = PartialColoring.from_assignment(g, 6, [1, 2, 3, 4, 0, 6])
    back = parse_coloring(serialize_coloring(c), g)
    assert back.color == c.color and back.k == 6
    for bad in ["x 0 1\n", "s 3\nx 9 1\n", "s 3\nx 0 1\nx 0 2\n", "s 3\ny\n", "s x\n"]:
        with pytest.raises(ParseError):
            parse_coloring(bad, g)


@given(multigraphs(max_n=7, max_m=16), st.data())
def test_caches_agree_with_recomputation(g, data):
    k = max_degree(g) + 1
    order = data.draw(st.permutations(range(g.edge_count)))
    c = greedy(g, k, order)
    for _ in range(data.draw(st.integers(0, 8))):
        if not g.edge_count:
            break
        v = data.draw(st.integers(0, g.vertex_count - 1))
        a, b = data.draw(st.sampled_from([(a, b) for a in range(1, k + 1) for b in range(1, k + 1) if a != b]))
        kempe_swap(c, chain_at(c, v, a, b))
        c.audit()
        assert class_is_matching(c)
    for v in range(g.vertex_count):
        used = {c.color[e] for e in g.incidence[v] if c.color[e]}
        assert c.missing(v) == set(range(1, k + 1)) - used

import pytest
from hypothesis import given
from hypothesis import strategies as st

from edgecolor.coloring import PartialColoring, class_is_matching
from edgecolor.errors import BoundaryColorPresent, StaleChain
from edgecolor.graph import Multigraph, max_degree
from edgecolor.kempe import CYCLE, PATH, ExitPath, chain_at, classify_chains_through, kempe_swap, swap_outside

from .strategies import multigraphs
from .test_coloring import greedy


def colored(n, edges, colors, k):
    return PartialColoring.from_assignment(Multigraph.from_edges(n, edges), k, colors)


def test_trivial_chain_and_swap():
    c = colored(3, [(0, 1)], [1], 3)
    ch = chain_at(c, 2, 1, 2)
    assert ch.vertices == (2,) and ch.edges == ()
    before = list(c.color)
    kempe_swap(c, ch)
    assert c.color == before


def test_path_chain_and_swap():
    c = colored(3, [(0, 1), (1, 2)], [1, 2], 3)
    ch = chain_at(c, 0, 1, 2)
    assert ch.kind == PATH and ch.vertices == (0, 1, 2)
    kempe_swap(c, ch)
    assert c.color == [2, 1]


def test_cycle_chain_keeps_missing_sets():
    c = colored(4, [(0, 1), (1, 2), (2, 3), (3, 0)], [1, 2, 1, 2], 3)
    ch = chain_at(c, 2, 1, 2)
    assert ch.kind == CYCLE and len(ch.edges) == 4
    before = [c.missing(v) for v in range(4)]
    kempe_swap(c, ch)
    assert [c.missing(v) for v in range(4)] == before


def test_stale_chain_rejected():
    c = colored(3, [(0, 1), (1, 2)], [1, 2], 3)
    ch = chain_at(c, 0, 1, 2)
    c.recolor(1, 3)
    with pytest.raises(StaleChain):
        kempe_swap(c, ch)


def test_swap_outside_examples():
    # two disjoint triangles; colors 1 and 2 are used only on the second one
    c = colored(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)], [3, 4, 5, 1, 2, 3], 5)
    same = list(c.color)
    swap_outside(c, range(6), 1, 2)
    assert c.color == same
    swap_outside(c, {0, 1, 2}, 4, 5)  # neither color appears outside the first triangle
    assert c.color == same
    swap_outside(c, {0, 1, 2}, 1, 2)
    assert c.color == [3, 4, 5, 2, 1, 3]
    with pytest.raises(BoundaryColorPresent):
        swap_outside(c, {3}, 1, 2)


def test_classify_ear():
    # t = {0, 1}; the (1,2)-chain leaves 0, runs through 2, 3, 4 and returns to 1
    c = colored(5, [(0, 2), (2, 3), (3, 4), (4, 1)], [1, 2, 1, 2], 3)
    rep = classify_chains_through(c, {0, 1}, 1, 2)
    assert len(rep.ears) == 1 and not rep.exits
    ear = rep.ears[0]
    assert set(ear.roots) == {0, 1} and set(ear.vertices) == {0, 1, 2, 3, 4}


def test_classify_exit_path():
    # t = {0, 1}; the (1,2)-chain leaves 1 and ends at 3, which misses 1
    c = colored(4, [(0, 1), (1, 2), (2, 3)], [3, 1, 2], 3)
    rep = classify_chains_through(c, {0, 1}, 1, 2)
    assert len(rep.exits) == 1
    ex = rep.exits[0]
    assert isinstance(ex, ExitPath) and ex.exit_vertex == 1 and ex.outside_end == 3 and ex.exit_edge == 1


def test_classify_closed_colors_single_path():
    # both colors missing inside t and absent from its boundary: at most one path meets t
    c = colored(3, [(0, 1), (1, 2)], [1, 2], 4)
    rep = classify_chains_through(c, {0, 1, 2}, 1, 2)
    assert rep.path_count <= 1 and not rep.exits


@given(multigraphs(max_n=7, max_m=16), st.data())
def test_swap_is_involution_and_keeps_matchings(g, data):
    k = max_degree(g) + 1
    c = greedy(g, k)
    v = data.draw(st.integers(0, g.vertex_count - 1))
    a = data.draw(st.integers(1, k))
    b = data.draw(st.integers(1, k).filter(lambda x: x != a))
    before = list(c.color)
    ch = chain_at(c, v, a, b)
    kempe_swap(c, ch)
    assert class_is_matching(c)
    kempe_swap(c, chain_at(c, v, a, b))
    assert c.color == before

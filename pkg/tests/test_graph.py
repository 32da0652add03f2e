import pytest
from hypothesis import given
from hypothesis import strategies as st

from edgecolor.errors import EmptySet, ParseError
from edgecolor.generators import fat_triangle, path, petersen
from edgecolor.graph import (
    Multigraph,
    boundary_edges,
    induced_subgraph,
    inner_edges,
    max_degree,
    multiplicity,
    parse_graph,
    serialize_graph,
)

from .strategies import multigraphs


def test_max_degree_examples():
    assert max_degree(Multigraph.from_edges(2, [(0, 1)])) == 1
    assert max_degree(fat_triangle(3)) == 6
    assert max_degree(petersen()) == 3


def test_boundary_examples():
    single = Multigraph.from_edges(2, [(0, 1)])
    assert boundary_edges(single, {0}) == [0]
    assert boundary_edges(single, {0, 1}) == []
    g = fat_triangle(2)  # edges 0,1: a-b; 2,3: b-c; 4,5: a-c
    assert boundary_edges(g, {0, 1}) == [2, 3, 4, 5]
    with pytest.raises(EmptySet):
        boundary_edges(g, set())


def test_induced_subgraph_examples():
    g = petersen()
    sub, mapping = induced_subgraph(g, range(10))
    assert sub.ends == g.ends and mapping == {v: v for v in range(10)}
    sub, _ = induced_subgraph(path(3), {0, 2})
    assert (sub.vertex_count, sub.edge_count) == (2, 0)
    sub, _ = induced_subgraph(g, range(5))
    assert (sub.vertex_count, sub.edge_count) == (5, 5)
    with pytest.raises(EmptySet):
        induced_subgraph(g, [])


def test_parse_examples():
    g = parse_graph("p edge 2 1\ne 1 2\n")
    assert (g.vertex_count, g.edge_count) == (2, 1)
    text = "c fat\np edge 3 6\n" + "e 1 2\ne 2 3\ne 1 3\n" * 2
    g = parse_graph(text)
    assert multiplicity(g) == 2 and max_degree(g) == 4


@pytest.mark.parametrize(
    "text, line",
    [
        ("p edge 2 1\ne 1 1\n", 2),
        ("p edge 2 1\ne 1 3\n", 2),
        ("p edge 2 2\ne 1 2\n", 1),
        ("e 1 2\n", 1),
        ("p edge 2\n", 1),
        ("p edge 2 1\np edge 2 1\n", 2),
        ("p edge 2 1\nq 1 2\n", 2),
        ("", 1),
    ],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as exc:
        parse_graph(text)
    assert exc.value.line == line


def test_self_loop_rejected_in_constructor():
    with pytest.raises(ValueError):
        Multigraph.from_edges(2, [(1, 1)])


@given(multigraphs())
def test_serialize_roundtrip(g):
    assert parse_graph(serialize_graph(g, "roundtrip")).ends == g.ends


@given(multigraphs(), st.data())
def test_boundary_and_inner_partition_edges(g, data):
    x = data.draw(st.sets(st.integers(0, g.vertex_count - 1), min_size=1))
    rest = set(range(g.vertex_count)) - x
    parts = boundary_edges(g, x) + inner_edges(g, x) + (inner_edges(g, rest) if rest else [])
    assert sorted(parts) == list(range(g.edge_count))


@given(multigraphs())
def test_max_degree_by_independent_count(g):
    counts = [0] * g.vertex_count
    for u, v in g.ends:
        counts[u] += 1
        counts[v] += 1
    assert max_degree(g) == max(counts)

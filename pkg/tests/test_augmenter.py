import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from edgecolor.augmenter import (
    Certificate,
    Colored,
    EngineConfig,
    Measure,
    Stats,
    certificate_count_check,
    path_number,
    resolve,
)
from edgecolor.coloring import PartialColoring, class_is_matching
from edgecolor.errors import InvalidCertificate
from edgecolor.generators import fat_triangle, petersen
from edgecolor.graph import Multigraph
from edgecolor.tree import TreeSequence

from .fixtures import ALL, load
from .naive import naive_path_number
from .strategies import stuck_from_seed, stuck_instances
from .test_coloring import greedy

CHECKED = EngineConfig(checks=True)


def proper_and_total_on(c: PartialColoring, e: int) -> bool:
    return c.color[e] != 0 and class_is_matching(c)


def tree_from_parents(parents):
    """Vertex i + 1 hangs from vertex parents[i]; edge i joins them."""
    ends = [(p, i + 1) for i, p in enumerate(parents)]
    g = Multigraph.from_edges(len(parents) + 1, ends)
    return g, TreeSequence(range(len(parents) + 1), [None] + list(range(len(parents))))


def naive_on(g, t, split):
    return naive_path_number(t.vertices, [None] + [g.ends[x] for x in t.edges[1:]], split)


def test_path_number_examples():
    g, t = tree_from_parents([0, 1, 2])
    assert path_number(t, 1, g) == 1
    g, t = tree_from_parents([0, 1, 0])
    assert path_number(t, 1, g) == 3
    g, t = tree_from_parents([0, 0, 2, 3])
    assert path_number(t, 1, g) == 2
    assert path_number(t, 2, g) == 1
    with pytest.raises(ValueError):
        path_number(t, 5, g)


@given(st.lists(st.integers(0, 10**6), min_size=1, max_size=12), st.integers(1, 12))
def test_path_number_matches_naive(raw, split):
    parents = [x % (i + 1) for i, x in enumerate(raw)]
    g, t = tree_from_parents(parents)
    split = min(split, len(t) - 1)
    assert path_number(t, split, g) == naive_on(g, t, split)


def test_measure_order_is_lexicographic():
    assert Measure(0, 5, 9, 9) < Measure(1, 0, 1, 1)
    assert Measure(1, 0, 2, 1) < Measure(1, 0, 2, 3)
    assert str(Measure(1, 2, 3, 4)) == "1 2 3 4"


def test_single_edge_is_colored():
    g = Multigraph.from_edges(2, [(0, 1)])
    c = PartialColoring(g, 2)
    out = resolve(c, 0, config=CHECKED)
    assert isinstance(out, Colored)
    assert out.coloring.color[0] in (1, 2)
    assert c.color[0] == 0  # the input is untouched


def test_fat_triangle_is_certified():
    g = fat_triangle(2)
    c = PartialColoring.from_assignment(g, 5, [1, 2, 3, 4, 5, 0])
    stats = Stats()
    out = resolve(c, 5, config=CHECKED, stats=stats)
    assert out == Certificate(frozenset({0, 1, 2}), 5)
    assert stats.invariant_violations == []


def test_widened_palette_colors_the_fat_triangle():
    g = fat_triangle(2)
    c = PartialColoring.from_assignment(g, 5, [1, 2, 3, 4, 5, 0])
    out = resolve(c, 5, 6, config=CHECKED)
    assert isinstance(out, Colored)
    assert out.coloring.color[5] == 6


def petersen_stuck(seed=0):
    g = petersen()
    rnd = random.Random(seed)
    while True:
        order = list(range(g.edge_count))
        rnd.shuffle(order)
        c = greedy(g, 4, order)
        if len(c.uncolored()) == 1:
            return c, c.uncolored()[0]


def test_petersen_stuck_edge_is_colored_with_four():
    c, e = petersen_stuck()
    out = resolve(c, e, config=CHECKED)
    assert isinstance(out, Colored)
    assert proper_and_total_on(out.coloring, e)
    assert out.coloring.k == 4


def test_resolve_rejects_bad_input():
    g = fat_triangle(2)
    c = PartialColoring.from_assignment(g, 5, [1, 2, 3, 4, 5, 0])
    with pytest.raises(ValueError):
        resolve(c, 0)
    with pytest.raises(ValueError):
        resolve(PartialColoring(g, 4), 0)


@pytest.mark.parametrize("fx", ALL, ids=["no-extension", "extends-a", "extends-b"])
def test_hunted_fixtures_resolve_cleanly(fx):
    c, e = load(fx)
    stats = Stats()
    out = resolve(c, e, config=CHECKED, stats=stats)
    assert isinstance(out, Colored)
    assert proper_and_total_on(out.coloring, e)
    assert stats.invariant_violations == []
    assert stats.measure_violations == 0


def test_certificate_count_check_examples():
    fat2 = PartialColoring(fat_triangle(2), 5)
    assert certificate_count_check(fat2, {0, 1, 2}, 5) == 6
    fat3 = PartialColoring(fat_triangle(3), 8)
    assert certificate_count_check(fat3, {0, 1, 2}, 8) == 9
    with pytest.raises(InvalidCertificate):
        certificate_count_check(fat2, {0, 1}, 5)
    with pytest.raises(InvalidCertificate):
        certificate_count_check(fat2, {0, 1, 2}, 6)
    with pytest.raises(InvalidCertificate):
        certificate_count_check(fat2, {0, 1, 7}, 5)


@given(stuck_instances)
def test_resolve_outcomes_are_sound(inst):
    c, e = inst
    stats = Stats()
    out = resolve(c, e, config=CHECKED, stats=stats)
    assert stats.invariant_violations == []
    assert stats.measure_violations == 0
    if isinstance(out, Colored):
        assert proper_and_total_on(out.coloring, e)
        for x in range(c.g.edge_count):
            if x != e:
                assert out.coloring.color[x] != 0
    else:
        assert certificate_count_check(c, out.vertices, c.k) > c.k


@given(st.integers(0, 2**32))
def test_resolve_with_spare_color(seed):
    c, e = stuck_from_seed(seed, extra=1)
    stats = Stats()
    out = resolve(c, e, config=CHECKED, stats=stats)
    assert stats.invariant_violations == []
    if isinstance(out, Colored):
        assert proper_and_total_on(out.coloring, e)
    else:
        certificate_count_check(c, out.vertices, c.k)

import pytest
from hypothesis import given, settings

from edgecolor.errors import TooLarge
from edgecolor.generators import cycle, fat_triangle, path, petersen, random_multigraph
from edgecolor.graph import Multigraph
from edgecolor.oracle import DensityReport, chromatic_index_oracle, colorable, gamma_bruteforce, subset_density

from .naive import naive_chi, naive_gamma
from .strategies import multigraphs

# [DERIVED] from the naive enumerations in tests/naive.py, then frozen.
FROZEN = [
    ("triangle", fat_triangle(1), 3, 3),
    ("fat2", fat_triangle(2), 6, 6),
    ("fat3", fat_triangle(3), 9, 9),
    ("petersen", petersen(), 3, 4),
]


@pytest.mark.parametrize("name,g,gamma,chi", FROZEN, ids=[x[0] for x in FROZEN])
def test_frozen_values(name, g, gamma, chi):
    assert gamma_bruteforce(g).gamma == gamma
    assert chromatic_index_oracle(g) == chi


@pytest.mark.parametrize("name,g,gamma,chi", FROZEN[:3], ids=[x[0] for x in FROZEN[:3]])
def test_frozen_values_agree_with_naive(name, g, gamma, chi):
    assert naive_gamma(g.vertex_count, g.ends) == gamma
    assert naive_chi(g.vertex_count, g.ends) == chi


def test_petersen_witness_is_lexicographically_smallest():
    rep = gamma_bruteforce(petersen())
    assert rep == DensityReport(3, (0, 1, 2, 3, 4))


def test_trivial_graphs():
    assert gamma_bruteforce(Multigraph.from_edges(1, [])) == DensityReport(0, ())
    assert gamma_bruteforce(Multigraph.from_edges(3, [])).gamma == 0
    assert gamma_bruteforce(path(4)).gamma == 2  # two edges on three vertices
    assert gamma_bruteforce(cycle(5)).gamma == 3
    assert chromatic_index_oracle(Multigraph.from_edges(3, [])) == 0
    assert chromatic_index_oracle(cycle(5)) == 3
    assert chromatic_index_oracle(cycle(6)) == 2


def test_subset_density():
    g = fat_triangle(2)
    assert subset_density(g, {0, 1}) == 2
    assert subset_density(g, {0, 1, 2}) == 6
    with pytest.raises(ValueError):
        subset_density(g, {0})


def test_limits():
    with pytest.raises(TooLarge):
        gamma_bruteforce(path(30))
    with pytest.raises(TooLarge):
        chromatic_index_oracle(path(40))


def test_colorable_below_degree_is_false():
    assert not colorable(fat_triangle(2), 3)


def test_oracle_at_twenty_vertices_is_fast():
    import time

    g = random_multigraph(7, 20, 2, 40)
    t = time.perf_counter()
    gamma_bruteforce(g)
    assert time.perf_counter() - t < 5


@given(multigraphs(max_n=7, max_mult=3, max_m=12))
def test_gamma_matches_naive(g):
    rep = gamma_bruteforce(g)
    assert rep.gamma == naive_gamma(g.vertex_count, g.ends)
    if rep.argmax_set:
        assert subset_density(g, rep.argmax_set) == rep.gamma


@settings(max_examples=30)
@given(multigraphs(max_n=6, max_mult=3, max_m=9))
def test_chromatic_index_matches_naive(g):
    assert chromatic_index_oracle(g) == naive_chi(g.vertex_count, g.ends)

import random

from hypothesis import given
from hypothesis import strategies as st

from edgecolor.coloring import PartialColoring
from edgecolor.errors import EngineInvariantViolation
from edgecolor.graph import Multigraph
from edgecolor.hierarchy import OK, HierarchyState, allocate_gamma0, build_hierarchy, check_r2, view
from edgecolor.series import Extended, initial_series, start, try_extend
from edgecolor.tree import TreeSequence, closure

from .fixtures import EXTENDS_A, EXTENDS_B, load
from .strategies import stuck_instances


def test_view_of_rung_zero_has_no_connecting_colors():
    c, e = load(EXTENDS_A)
    h = view(c, start(c, e))
    assert h.levels == [1]
    assert h.gamma_sets == [{}]
    assert h.d_colors == frozenset()
    assert h.gamma_n is None
    assert check_r2(c, h) == OK


def test_build_example_a():
    c, e = load(EXTENDS_A)
    s = try_extend(c, initial_series(c, e)).state
    assert allocate_gamma0(c, s, 1) == {5: (1, 3)}
    lines = []
    c.trace = lines.append
    h = build_hierarchy(c, s)
    assert lines == ["T+ 7 2"]
    assert h.tree.vertices == [3, 4, 5, 2]
    assert h.levels == [3]
    assert h.gamma_sets == [{5: (1, 3)}]
    assert h.reserved == (2, 4)
    assert h.gamma_n == 4
    assert h.d_colors == frozenset({5})
    assert h.conflict == 3 and not h.closed
    assert check_r2(c, h) == OK


def test_build_example_b():
    c, e = load(EXTENDS_B)
    h = build_hierarchy(c, try_extend(c, initial_series(c, e)).state)
    assert h.tree.vertices == [2, 7, 6, 4]
    assert h.gamma_sets == [{1: (2, 5)}]
    assert h.reserved == (4, 6)
    assert h.gamma_n == 3
    assert check_r2(c, h) == OK


def test_check_flags_missing_pair():
    c, e = load(EXTENDS_A)
    h = build_hierarchy(c, try_extend(c, initial_series(c, e)).state)
    h.gamma_sets = [{}]
    assert check_r2(c, h) == "ii"


def test_check_flags_reserved_color_in_pair():
    c, e = load(EXTENDS_A)
    h = build_hierarchy(c, try_extend(c, initial_series(c, e)).state)
    h.gamma_sets = [{5: (1, 2)}]
    assert check_r2(c, h) == "pre"


def small_hierarchy(via_pair_color: bool) -> tuple[PartialColoring, HierarchyState]:
    # x = 0 misses 1, 2 (reserved); level 0 is {0, 1} and misses 1..4; color 5
    # is pending with pair (3, 4). The next vertex enters by an edge colored 4
    # (a pair color, breaking the first clause) or 5 (allowed).
    g = Multigraph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2)])
    c = PartialColoring.from_assignment(g, 5, [0, 3, 4, 5, 5])
    t = TreeSequence([0, 1], [None, 0])
    if via_pair_color:
        t.append(2, 3)
    else:
        t.append(4, 2)
    return c, HierarchyState(t, [2], [{5: (3, 4)}], (1, 2), None, frozenset({5}))


def test_check_first_clause():
    c, h = small_hierarchy(True)
    assert check_r2(c, h) == "i"
    c, h = small_hierarchy(False)
    assert check_r2(c, h) == OK


@given(stuck_instances, st.integers(0, 10**6))
def test_built_hierarchies_satisfy_clauses(inst, seed):
    c, e = inst
    try:
        out = try_extend(c, initial_series(c, e))
    except EngineInvariantViolation:
        return
    if not isinstance(out, Extended):
        return
    h = build_hierarchy(c, out.state, random.Random(seed))
    assert check_r2(c, h) == OK
    if h.closed:
        # a closed top reached by augmentation is the closure of its base
        base = out.state.tree.prefix(out.state.sizes[1] + 1)
        assert h.tree.vertex_set() == closure(c, base).vertex_set()

"""Hand-picked stuck instances found by random search, frozen as literals.

Each entry is (vertex count, edge ends, colors with 0 for uncolored, stuck edge, k).
"""

from edgecolor.coloring import PartialColoring
from edgecolor.graph import Multigraph

# The rung-0 closure is closed, elementary and not strongly closed, yet no
# ear of a defective color exists: the series cannot be extended.
NO_EXTENSION = (
    7,
    ((0, 6), (3, 6), (1, 3), (3, 6), (3, 4), (3, 4), (1, 6), (1, 2), (1, 6), (1, 6), (1, 3)),
    [4, 7, 1, 3, 4, 6, 6, 4, 5, 0, 2],
    9,
    7,
)

# In both of these the rung-0 closure admits an initial extension, and
# regrowing the next rung with a hierarchy meets a repeated missing color
# right after the connecting edge.
EXTENDS_A = (
    9,
    ((4, 5), (3, 4), (3, 4), (3, 5), (6, 8), (0, 7), (3, 5), (2, 5), (7, 8), (0, 4), (2, 6), (4, 5), (1, 3), (1, 2)),
    [2, 0, 3, 6, 6, 6, 1, 5, 4, 5, 1, 4, 5, 4],
    1,
    6,
)

EXTENDS_B = (
    9,
    ((0, 5), (2, 7), (4, 7), (2, 7), (0, 1), (6, 7), (1, 2), (6, 7), (0, 6), (0, 4), (3, 8), (2, 6), (2, 6), (1, 3), (0, 3)),
    [6, 0, 1, 3, 4, 4, 1, 6, 1, 3, 3, 2, 5, 2, 5],
    1,
    6,
)

ALL = (NO_EXTENSION, EXTENDS_A, EXTENDS_B)


def load(fx):
    """(coloring, stuck edge) for a fixture tuple."""
    n, ends, cols, e, k = fx
    g = Multigraph(n, tuple(ends))
    return PartialColoring.from_assignment(g, k, list(cols)), e

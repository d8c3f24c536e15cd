import pytest

from rwlab import ColoredGraph, WalkInstance


@pytest.fixture
def i0():
    """Directed edge-colored triangle-ish graph: 0->1 (1), 1->2 (2), 0->2 (2)."""
    g = ColoredGraph.build(True, 3, [(0, 1), (1, 2), (0, 2)], "edge", 2, [1, 2, 2])
    return WalkInstance(g, 0, 2, [1, 2])


@pytest.fixture
def j0():
    """Directed node-colored path 0->1->2 with node colors (1, 2, 1)."""
    g = ColoredGraph.build(True, 3, [(0, 1), (1, 2)], "node", 2, [1, 2, 1])
    return WalkInstance(g, 0, 2, [2, 1])

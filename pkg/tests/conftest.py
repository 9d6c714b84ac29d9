import pytest

from asymgraph import Graph


@pytest.fixture
def p5() -> Graph:
    """Path 0-1-2-3-4."""
    return Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])


@pytest.fixture
def c6() -> Graph:
    """Cycle on 6 vertices."""
    return Graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)])


@pytest.fixture
def tri_bridge() -> Graph:
    """Triangle 0,1,2 plus pendant edge 2-3."""
    return Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])


@pytest.fixture
def bowtie() -> Graph:
    """Triangles \\{0,1,2\\} and \\{2,3,4\\} sharing vertex 2."""
    return Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])


@pytest.fixture
def two_triangles() -> Graph:
    """Two disjoint triangles."""
    return Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


@pytest.fixture
def blocks9() -> Graph:
    """Nine-vertex instance whose BC labeling is l=[1,1,1,2,1,1,3,3],
    r=[1,2,6] when vertices are read 1-indexed with root 1: a six-cycle
    block containing the root, a pendant bridge at the first cut vertex,
    and a triangle hanging off the second."""
    return Graph(9, [(0, 1), (1, 2), (2, 3), (3, 5), (5, 6), (0, 6),
                     (1, 4), (5, 7), (7, 8), (5, 8)])

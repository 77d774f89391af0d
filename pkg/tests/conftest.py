import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from clutterlab import Clutter, IncidenceMatrix, MonomialIdeal, Poset


@pytest.fixture
def c5() -> Clutter:
    """Edge clutter of the 5-cycle."""
    return Clutter(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])


@pytest.fixture
def k3_clutter() -> Clutter:
    """Clique clutter of the triangle: one edge."""
    return Clutter(3, [(0, 1, 2)])


@pytest.fixture
def diamond_poset() -> Poset:
    """a < b, a < c, a < d, b < d, c < d with a=0, b=1, c=2, d=3."""
    return Poset(4, [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)])


@pytest.fixture
def chain3() -> Poset:
    return Poset(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def two_squares() -> MonomialIdeal:
    """I = (x^2, y^2), the canonical non-normal example."""
    return MonomialIdeal(2, [(2, 0), (0, 2)])


@pytest.fixture
def identity3() -> IncidenceMatrix:
    return IncidenceMatrix(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])


@pytest.fixture
def ones_column3() -> IncidenceMatrix:
    """Incidence matrix of the triangle clique clutter: one all-ones column."""
    return IncidenceMatrix(3, [(1, 1, 1)])

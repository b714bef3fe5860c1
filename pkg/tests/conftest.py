"""Shared fixtures: small analytic clouds with known persistence."""

import numpy as np
import pytest

from holecount import Cloud

# Two touching "rooms" separated by a central wall: the union of disks is one
# hole at scale 1.5, splits into two at 2.0, and both vanish at 5*sqrt(17)/8.
FIGURE_EIGHT_POINTS = np.array([
    (0.0, 2.0), (0.0, -2.0),
    (4.0, 1.0), (4.0, -1.0), (-4.0, 1.0), (-4.0, -1.0),
    (2.88, 2.84), (-2.88, 2.84), (2.88, -2.84), (-2.88, -2.84),
])

FIGURE_EIGHT_DEATH = 5.0 * np.sqrt(17.0) / 8.0


@pytest.fixture
def square2():
    """Corners of a side-2 square; one hole on [1, sqrt(2))."""
    return Cloud.from_points([(0, 0), (2, 0), (2, 2), (0, 2)])


@pytest.fixture
def equilateral2():
    """Equilateral triangle with side 2; one hole on [1, 2/sqrt(3))."""
    return Cloud.from_points([(0, 0), (2, 0), (1, np.sqrt(3.0))])


@pytest.fixture
def figure_eight():
    return Cloud.from_points(FIGURE_EIGHT_POINTS)


def random_cloud(seed, n, span=1.0):
    rng = np.random.default_rng(seed)
    return Cloud.from_points(span * rng.random((n, 2)))

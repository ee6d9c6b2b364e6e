import numpy as np
import pytest

import radonflow as rf

# frozen desk-scale configurations used across the suite
SQUARE = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]
TRI_INTERIOR = [[0.0, 0.0], [2.0, 0.0], [0.0, 2.0], [0.5, 0.5]]
HEXAGON = [[0.0, 0.0], [4.0, 1.0], [6.0, 4.0], [5.0, 7.0], [1.0, 6.0], [-1.0, 3.0]]
LINE4 = [[0.0], [1.0], [2.0], [4.0]]


def pentagon_points():
    ang = 2.0 * np.pi * np.arange(5) / 5.0
    return np.stack([np.cos(ang), np.sin(ang)], axis=1)


@pytest.fixture(scope="session")
def square_config():
    return rf.PointConfiguration(np.asarray(SQUARE), 2)


@pytest.fixture(scope="session")
def square_matroid(square_config):
    return rf.circuits_of_points(square_config)


@pytest.fixture(scope="session")
def tri_interior_config():
    return rf.PointConfiguration(np.asarray(TRI_INTERIOR), 2)


@pytest.fixture(scope="session")
def pentagon_config():
    return rf.PointConfiguration(pentagon_points(), 2)


@pytest.fixture(scope="session")
def hexagon_config():
    return rf.PointConfiguration(np.asarray(HEXAGON), 2)


@pytest.fixture(scope="session")
def line_config():
    return rf.PointConfiguration(np.asarray(LINE4), 1)


@pytest.fixture(scope="session")
def pentagon_complex(pentagon_config):
    return rf.geometric_radon_complex(pentagon_config)


@pytest.fixture(scope="session")
def hexagon_complex(hexagon_config):
    return rf.geometric_radon_complex(hexagon_config)


@pytest.fixture(scope="session")
def pentagon_sphere(pentagon_complex):
    return rf.EmbeddedSphere.from_geometric(pentagon_complex)


@pytest.fixture(scope="session")
def hexagon_sphere(hexagon_complex):
    return rf.EmbeddedSphere.from_geometric(hexagon_complex)


def sample_spanning_points(n, d, rng):
    """Integer coordinates in [-20, 20], resampled until they span R^d."""
    while True:
        pts = rng.integers(-20, 21, size=(n, d))
        config = rf.PointConfiguration(pts.astype(float), d)
        if config.affinely_spans():
            return pts

import numpy as np
import pytest

from geoconfig.vecgeo import OrderedConfig


@pytest.fixture
def ex1() -> tuple[OrderedConfig, OrderedConfig]:
    """Type (b) pair in the plane."""
    return OrderedConfig([-6.0, 4.0], [6.0, 8.0]), OrderedConfig([8.0, -6.0], [2.0, -10.0])


@pytest.fixture
def ex2() -> tuple[OrderedConfig, OrderedConfig]:
    """Type (c) pair in the plane: h = (6, 4) = -2k."""
    return OrderedConfig([-6.0, 4.0], [6.0, 12.0]), OrderedConfig([8.0, -6.0], [2.0, -10.0])


@pytest.fixture
def z_pair() -> tuple[OrderedConfig, OrderedConfig]:
    """Type (c) pair in R^3 with h along e1."""
    return OrderedConfig([-2.0, 0.0, 0.0], [2.0, 0.0, 0.0]), OrderedConfig([1.0, 3.0, 0.0], [-1.0, 3.0, 0.0])


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(7)


def config_from(A: np.ndarray, h: np.ndarray) -> OrderedConfig:
    return OrderedConfig(A - h, A + h)


def random_unit(rng: np.random.Generator, n: int) -> np.ndarray:
    vec = rng.normal(size=n)
    return vec / np.linalg.norm(vec)

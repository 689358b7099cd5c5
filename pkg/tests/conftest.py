import pytest

from coarsecops import make_generator, precompute_tables


@pytest.fixture
def grid():
    return make_generator("grid")


@pytest.fixture
def grid_oracle(grid):
    return grid[0]


@pytest.fixture(scope="session")
def grid_tables_111():
    """Tables for the canonical grid setting k=1, s_c=1, rho=1."""
    g, rays = make_generator("grid")
    return g, rays, precompute_tables(g, rays, 1, 1, 1)

import numpy as np
import pytest

from fracdecay.kernel.spec import KernelSpec
from fracdecay.kernel.validation import normalize_mass
from fracdecay.lattice.grid import Grid, build_grid


def unit_custom_kernel() -> KernelSpec:
    """J = 1 on every pair."""
    return KernelSpec('custom', sigma=None, function=lambda x, y: np.ones(len(x)))


@pytest.fixture
def hand_grid() -> Grid:
    """Three cells at -1, 0, 1 with h = 1."""
    return Grid(1, 1.5, 3)


@pytest.fixture
def unit_kernel() -> KernelSpec:
    return unit_custom_kernel()


@pytest.fixture(scope="session")
def small_grid() -> Grid:
    return build_grid(2, 10.0, 32)


@pytest.fixture(scope="session")
def tail_kernel_2d() -> KernelSpec:
    """Unit-mass fractional_tail kernel with sigma = 1/2 in two dimensions."""
    return normalize_mass(KernelSpec('fractional_tail', sigma=0.5), 1.0, 2)
